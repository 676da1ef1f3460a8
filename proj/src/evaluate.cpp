#include "mavrp/evaluate.hpp"

#include <deque>
#include <memory>
#include <string>

#include "mavrp/error.hpp"
#include "mavrp/state.hpp"

namespace mavrp {

Evaluation evaluate_solution(const InstanceData& inst, const std::vector<Route>& routes,
                             const EvaluateOptions& options) {
    const int n = static_cast<int>(inst.num_nodes());
    const int agents = static_cast<int>(inst.num_agents());
    std::vector<std::deque<int>> plan(agents);
    std::vector<bool> seen(agents, false);
    for (const auto& route : routes) {
        if (route.agent < 0 || route.agent >= agents) {
            throw Error(ErrorCode::InputError, "unknown agent " + std::to_string(route.agent));
        }
        if (seen[route.agent]) {
            throw Error(ErrorCode::InputError,
                        "agent " + std::to_string(route.agent) + " has two routes");
        }
        seen[route.agent] = true;
        for (const auto& visit : route.visits) {
            if (visit.node < 0 || visit.node >= n) {
                throw Error(ErrorCode::InputError, "unknown node " + std::to_string(visit.node));
            }
            plan[route.agent].push_back(visit.node);
        }
    }

    // Non-owning pointer; the state does not outlive this call.
    auto state = make_initial_state(std::shared_ptr<const InstanceData>(&inst, [](auto*) {}), 0);
    Evaluation out;
    while (state.num_active() > 0) {
        const int agent = select_next_agent(options.selector, state);
        state.active_agent = agent;
        auto& queue = plan[agent];
        int node = state.agents[agent].home_depot;
        if (!queue.empty()) {
            node = queue.front();
            queue.pop_front();
        }
        if (!is_feasible(state, agent, node, options.rules)) {
            out.feasible = false;
            out.violations.push_back({"INFEASIBLE_VISIT", node,
                                      "agent " + std::to_string(agent) + " cannot visit node " +
                                          std::to_string(node)});
        }
        perform_move(state, agent, node, options.rules);
    }
    for (int agent = 0; agent < agents; ++agent) {
        if (!plan[agent].empty()) {
            out.feasible = false;
            out.violations.push_back({"VISITS_AFTER_RETURN", plan[agent].front(),
                                      "agent " + std::to_string(agent) +
                                          " has visits after returning home"});
        }
    }
    const auto totals = sparse_reward(state, options.unserved_penalty_factor);
    out.objective = totals.reward;
    out.penalty = totals.penalty;
    return out;
}

} // namespace mavrp
