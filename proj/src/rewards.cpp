#include "mavrp/rewards.hpp"

#include <string>

#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(RewardMode mode) {
    return mode == RewardMode::Dense ? "dense" : "sparse";
}

RewardMode reward_mode_from_string(std::string_view name) {
    if (name == "dense") return RewardMode::Dense;
    if (name == "sparse") return RewardMode::Sparse;
    throw Error(ErrorCode::InputError, "unknown reward mode '" + std::string(name) + "'");
}

RewardPair dense_reward(Problem problem, const MoveDelta& delta, double move_distance) {
    // 0.0 - x keeps a zero-length move at +0.0 instead of -0.0.
    switch (problem) {
    case Problem::TOPTW:
        return {delta.profit, 0.0};
    case Problem::PCVRPTW:
        return {0.0 - move_distance + delta.profit, 0.0};
    case Problem::CVRPSTW:
        return {0.0 - move_distance, delta.soft_penalty};
    default:
        return {0.0 - move_distance, 0.0};
    }
}

double terminal_penalty(const InstanceData& inst, std::span<const int> unserved, double factor) {
    if (!penalizes_unserved(inst.problem)) {
        return 0.0;
    }
    double total = 0.0;
    for (int node : unserved) {
        total += inst.time(nearest_depot(inst, node, false), node);
    }
    return 0.0 - factor * total;
}

RewardPair sparse_reward(const EnvState& final_state, double factor) {
    RewardPair out;
    for (const auto& a : final_state.agents) {
        out.reward += a.reward;
        out.penalty += a.penalty;
    }
    const auto unserved = unserved_nodes(final_state);
    out.penalty += terminal_penalty(final_state.inst(), unserved, factor);
    return out;
}

} // namespace mavrp
