#pragma once

#include <string_view>
#include <vector>

#include "mavrp/environment.hpp"

namespace mavrp {

/// Uniform over the mask.
int policy_random(const EnvState& state, const Mask& mask, Rng& rng);
/// Nearest feasible service from the active agent; depot when none.
int policy_greedy_nearest(const EnvState& state, const Mask& mask, Rng& rng);
/// Feasible service maximizing profit / (travel + wait + service time);
/// depot when no feasible service has positive profit.
int policy_greedy_ratio(const EnvState& state, const Mask& mask, Rng& rng);

/// "random", "greedy_nearest" or "greedy_ratio"; Error(InputError) otherwise.
Policy make_policy(std::string_view name);
std::vector<std::string_view> policy_names();

/// Signed percentage (model - ref) / ref * 100. Error(InputError) when
/// ref is zero.
double gap(double score_model, double score_ref);

struct StatsSummary {
    int episodes = 0;
    double av_obj = 0.0;
    double std_obj = 0.0;
    double av_agents_used = 0.0;
    double std_agents_used = 0.0;
    double av_served_fraction = 0.0;
    double std_served_fraction = 0.0;
    double av_reward = 0.0;
    double av_penalty = 0.0;
};

/// Means and population standard deviations. Objectives are reported as
/// magnitudes for minimization problems.
StatsSummary aggregate_stats(const std::vector<EpisodeStats>& stats);

} // namespace mavrp
