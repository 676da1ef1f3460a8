#include "mavrp/state.hpp"

#include <algorithm>
#include <cmath>

namespace mavrp {

int EnvState::num_active() const {
    return static_cast<int>(
        std::count_if(agents.begin(), agents.end(), [](const AgentState& a) { return a.active; }));
}

EnvState make_initial_state(std::shared_ptr<const InstanceData> instance, std::uint64_t seed) {
    EnvState state;
    const auto& inst = *instance;
    const std::size_t n = inst.num_nodes();
    state.visited.assign(n, 0);
    state.served_by.assign(n, -1);
    state.remaining_demand.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!inst.is_depot[i]) {
            state.remaining_demand[i] = std::abs(inst.demand[i]);
        }
    }
    for (int home : inst.agent_home_depot) {
        AgentState agent;
        agent.home_depot = home;
        agent.location = home;
        agent.clock = inst.depot_open(home);
        state.agents.push_back(std::move(agent));
    }
    state.rng = Rng(seed);
    state.instance = std::move(instance);
    return state;
}

std::vector<int> unserved_nodes(const EnvState& state) {
    const auto& inst = state.inst();
    const bool split = is_split_delivery(inst.problem);
    std::vector<int> out;
    for (std::size_t i = 0; i < inst.num_nodes(); ++i) {
        if (inst.is_depot[i]) {
            continue;
        }
        const bool open = split ? state.remaining_demand[i] > kQuantityTolerance : !state.visited[i];
        if (open) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

} // namespace mavrp
