#pragma once

#include "mavrp/state.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

/// Time at which soft time-window penalties are assessed.
enum class SoftPenaltyBasis { ServiceStart, Arrival };

struct RuleOptions {
    SoftPenaltyBasis soft_basis = SoftPenaltyBasis::ServiceStart;
};

/// Outcome of moving an agent to a node, computed from a state snapshot.
struct MoveDelta {
    double distance = 0.0;
    double arrival = 0.0;
    double service_start = 0.0;
    double depart = 0.0;
    double quantity = 0.0;
    double load_delta = 0.0;
    bool node_visited_after = false;
    double soft_penalty = 0.0;
    double profit = 0.0;
};

/// True when `agent` may move to `node`. The agent's home depot is always
/// feasible; other depots never are.
bool is_feasible(const EnvState& state, int agent, int node, const RuleOptions& options = {});

Mask mask_feasible(const EnvState& state, int agent, const RuleOptions& options = {});

/// Pure transition arithmetic; does not check feasibility.
MoveDelta apply_move(const EnvState& state, int agent, int node, const RuleOptions& options = {});

struct MoveRecord {
    MoveDelta delta;
    double reward = 0.0;
    double penalty = 0.0;
};

/// Applies apply_move's delta to the state, appends the visit to the agent's
/// trace and accumulates the dense reward/penalty. Returning to the home
/// depot retires the agent. Shared by the engine and solution replay.
MoveRecord perform_move(EnvState& state, int agent, int node, const RuleOptions& options = {});

} // namespace mavrp
