#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mavrp/observations.hpp"
#include "mavrp/rewards.hpp"
#include "mavrp/rules.hpp"
#include "mavrp/selection.hpp"
#include "mavrp/state.hpp"

namespace mavrp {

struct EnvConfig {
    SelectorKind selector = SelectorKind::RoundRobin;
    RewardMode reward_mode = RewardMode::Dense;
    /// Problem defaults when empty.
    std::optional<ObservationConfig> observations;
    /// Rollouts that never read observations can turn them off.
    bool compute_observations = true;
    double unserved_penalty_factor = kDefaultUnservedPenaltyFactor;
    RuleOptions rules;
};

struct EpisodeStats {
    std::string instance;
    Problem problem = Problem::CVRPTW;
    std::uint64_t seed = 0;
    double total_reward = 0.0;
    double total_penalty = 0.0;
    /// Positive total distance for minimization problems, collected score
    /// otherwise.
    double objective = 0.0;
    double total_distance = 0.0;
    /// Agents with at least one service.
    int agents_used = 0;
    int services_served = 0;
    int num_services = 0;
    double demand_served_fraction = 0.0;
    double profit_collected_fraction = 0.0;
    int steps = 0;
    std::vector<Route> routes;

    bool operator==(const EpisodeStats&) const = default;
};

struct StepOutcome {
    int agent = -1;
    double reward = 0.0;
    double penalty = 0.0;
    bool done = false;
    int next_agent = -1;
    /// Set on the final step only.
    std::optional<EpisodeStats> stats;
};

/// Stats of a finished (or partial) state; routes are the agents' traces.
EpisodeStats collect_stats(const EnvState& state, double factor = kDefaultUnservedPenaltyFactor);

/// Uniform draw over the true entries of a non-empty mask.
int sample_from_mask(const Mask& mask, Rng& rng);

class Environment {
public:
    explicit Environment(EnvConfig config = {});

    const EnvConfig& config() const { return config_; }

    /// Throws Error(InvalidInstance) with the validation summary when the
    /// instance fails validate_instance.
    ObservationBundle reset(std::shared_ptr<const InstanceData> instance, std::uint64_t seed);

    /// Throws Error(MaskViolation) for an action outside the mask and
    /// Error(InputError) once the episode is over.
    StepOutcome step(int action);

    Mask feasible_actions() const;
    /// Draws from the episode's own stream.
    int sample_action();
    int sample_action(Rng& rng) const;

    ObservationBundle observe() const;
    EpisodeStats stats_report() const;

    const EnvState& state() const;
    bool done() const { return state_ && state_->done; }

private:
    void require_running() const;

    EnvConfig config_;
    std::optional<EnvState> state_;
    std::optional<ObservationBuilder> builder_;
    Matrix static_features_;
};

/// Action chooser used by rollouts. Receives the live state, the active
/// agent's mask and a per-episode stream.
using Policy = std::function<int(const EnvState&, const Mask&, Rng&)>;

/// Runs one episode to completion. The environment stream uses `seed`; the
/// policy stream is derived from it.
EpisodeStats run_episode(std::shared_ptr<const InstanceData> instance, const Policy& policy,
                         const EnvConfig& config, std::uint64_t seed);

struct BatchOptions {
    int jobs = 1;
    /// Otherwise instances with different service counts are rejected.
    bool allow_mixed_sizes = false;
};

struct RolloutResult {
    std::optional<EpisodeStats> stats;
    /// Failure of this instance's episode; the batch carries on.
    std::string error;
};

/// Results are in input order and identical for any jobs value. Throws
/// Error(ProblemMismatch) or Error(SizeMismatch) for inhomogeneous batches;
/// seeds must be empty (instance seeds are used) or match instances in size.
std::vector<RolloutResult> batch_rollout(
    const std::vector<std::shared_ptr<const InstanceData>>& instances, const Policy& policy,
    const EnvConfig& config, const std::vector<std::uint64_t>& seeds = {},
    const BatchOptions& options = {});

} // namespace mavrp
