#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mavrp/rng.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

struct AgentState {
    int home_depot = 0;
    int location = 0;
    /// Absolute clock; starts at the home depot's opening time.
    double clock = 0.0;
    /// Onboard quantity (PDPTW) or capacity used so far (other problems).
    double load = 0.0;
    bool active = true;
    std::vector<Visit> trace;

    // Dense reward components accumulated in step order. Sparse totals are
    // sums of these, so both reward modes agree exactly.
    double reward = 0.0;
    double penalty = 0.0;
    double distance = 0.0;
    double profit = 0.0;
    int services = 0;

    bool operator==(const AgentState&) const = default;
};

struct EnvState {
    std::shared_ptr<const InstanceData> instance;
    std::vector<AgentState> agents;
    std::vector<std::uint8_t> visited;
    std::vector<double> remaining_demand;
    /// Last agent that served each node; -1 while unserved.
    std::vector<int> served_by;
    int active_agent = -1;
    int last_agent = -1;
    bool done = false;
    int step_count = 0;
    Rng rng;

    const InstanceData& inst() const { return *instance; }
    int num_active() const;
};

/// All agents at their home depot, clocks at the depot opening time, no
/// service performed. The active agent is not yet selected.
EnvState make_initial_state(std::shared_ptr<const InstanceData> instance, std::uint64_t seed);

/// Nodes still owed service at this point of the episode (all problems;
/// SDVRPTW counts nodes with remaining demand).
std::vector<int> unserved_nodes(const EnvState& state);

} // namespace mavrp
