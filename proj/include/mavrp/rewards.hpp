#pragma once

#include <span>
#include <string_view>

#include "mavrp/rules.hpp"
#include "mavrp/state.hpp"

namespace mavrp {

enum class RewardMode { Dense, Sparse };

std::string_view to_string(RewardMode mode);
RewardMode reward_mode_from_string(std::string_view name);

inline constexpr double kDefaultUnservedPenaltyFactor = 10.0;

struct RewardPair {
    double reward = 0.0;
    double penalty = 0.0;
    bool operator==(const RewardPair&) const = default;
};

RewardPair dense_reward(Problem problem, const MoveDelta& delta, double move_distance);

/// -factor * sum of distances from each unserved node to its nearest depot.
/// Zero for TOPTW and PCVRPTW, which do not require every node to be visited.
double terminal_penalty(const InstanceData& inst, std::span<const int> unserved,
                        double factor = kDefaultUnservedPenaltyFactor);

/// Episode totals: the agents' accumulated dense rewards and penalties,
/// summed in agent order, plus the terminal penalty.
RewardPair sparse_reward(const EnvState& final_state,
                         double factor = kDefaultUnservedPenaltyFactor);

} // namespace mavrp
