#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mavrp/rules.hpp"
#include "mavrp/state.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

enum class FeatureFamily { NodesStatic, NodesDynamic, Agent, OtherAgents, Global };

std::string_view to_string(FeatureFamily family);

/// Feature names selected per family, in column order.
struct ObservationConfig {
    std::vector<std::string> nodes_static;
    std::vector<std::string> nodes_dynamic;
    std::vector<std::string> agent;
    std::vector<std::string> other_agents;
    std::vector<std::string> global;

    const std::vector<std::string>& family(FeatureFamily f) const;
    std::vector<std::string>& family(FeatureFamily f);

    bool operator==(const ObservationConfig&) const = default;
};

/// The per-problem feature lists of the reference environments.
ObservationConfig default_observation_config(Problem problem);

/// Every feature name the registry knows for a family.
std::vector<std::string> available_features(FeatureFamily family);

/// JSON object {"nodes_static": [...], ...}. Families missing from the
/// document fall back to the problem's defaults.
ObservationConfig decode_observation_config(std::string_view text, Problem problem);
std::string encode_observation_config(const ObservationConfig& config);

/// Observations for the active agent. Times are divided by the instance
/// horizon, loads by capacity, node counts by the number of services and
/// agent counts by the fleet size. Time-to-open/close style features are
/// signed; fraction features are clamped to [0, 1].
struct ObservationBundle {
    int agent = -1;
    Matrix nodes_static;
    Matrix nodes_dynamic;
    std::vector<double> agent_features;
    Matrix other_agents;
    std::vector<double> global;
    Mask action_mask;
    Mask agents_mask;
};

class ObservationBuilder {
public:
    /// Throws Error(InputError) for names the registry does not know.
    explicit ObservationBuilder(ObservationConfig config);

    const ObservationConfig& config() const { return config_; }

    /// Step-independent; the engine computes it once per episode.
    Matrix nodes_static(const InstanceData& inst) const;
    Matrix nodes_dynamic(const EnvState& state, const RuleOptions& rules = {}) const;
    std::vector<double> agent(const EnvState& state, const RuleOptions& rules = {}) const;
    Matrix other_agents(const EnvState& state, const RuleOptions& rules = {}) const;
    std::vector<double> global(const EnvState& state) const;

    /// Full bundle for state.active_agent. After the episode ends the bundle
    /// has empty feature blocks and all-false masks.
    ObservationBundle observe(const EnvState& state, const Matrix& nodes_static,
                              const RuleOptions& rules = {}) const;

private:
    ObservationConfig config_;
    bool needs_feasible_counts_ = false;
};

} // namespace mavrp
