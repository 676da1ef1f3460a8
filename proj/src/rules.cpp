#include "mavrp/rules.hpp"

#include <algorithm>

#include "mavrp/rewards.hpp"

namespace mavrp {

namespace {

// Earliest admissible service start for a non-depot node.
double service_start_time(const InstanceData& inst, int node, double arrival) {
    if (has_soft_windows(inst.problem)) {
        return std::max(arrival, inst.tw_open[node] - inst.soft_params->max_violation);
    }
    return std::max(arrival, inst.tw_open[node]);
}

} // namespace

bool is_feasible(const EnvState& state, int agent, int node, const RuleOptions&) {
    const auto& inst = state.inst();
    const auto& a = state.agents[agent];
    if (!a.active) {
        return false;
    }
    if (node == a.home_depot) {
        return true;
    }
    if (inst.is_depot[node]) {
        return false;
    }
    const Problem problem = inst.problem;

    // Not yet fully served.
    if (is_split_delivery(problem)) {
        if (state.remaining_demand[node] <= kQuantityTolerance) {
            return false;
        }
    } else if (state.visited[node]) {
        return false;
    }

    // Capacity and precedence.
    const double residual = inst.capacity - a.load;
    switch (problem) {
    case Problem::TOPTW:
        break;
    case Problem::PDPTW:
        if (inst.demand[node] > 0.0) {
            if (a.load + inst.demand[node] > inst.capacity + kQuantityTolerance) {
                return false;
            }
        } else {
            const int pickup = inst.pickup_of[node];
            if (pickup < 0 || !state.visited[pickup] || state.served_by[pickup] != agent) {
                return false;
            }
        }
        break;
    case Problem::SDVRPTW:
        if (residual <= kQuantityTolerance) {
            return false;
        }
        break;
    default:
        if (inst.demand[node] > residual + kQuantityTolerance) {
            return false;
        }
        break;
    }

    // Time window.
    const double arrival = a.clock + inst.time(a.location, node);
    if (has_soft_windows(problem)) {
        const auto& sp = *inst.soft_params;
        if (arrival < inst.tw_open[node] - sp.max_violation - sp.max_wait - kTimeTolerance ||
            arrival > inst.tw_close[node] + sp.max_violation + kTimeTolerance) {
            return false;
        }
    } else if (std::max(arrival, inst.tw_open[node]) > inst.tw_close[node] + kTimeTolerance) {
        return false;
    }

    // Return to the home depot before it closes.
    const double depart = service_start_time(inst, node, arrival) + inst.service_time[node];
    return depart + inst.time(node, a.home_depot) <=
           inst.depot_close(a.home_depot) + kTimeTolerance;
}

Mask mask_feasible(const EnvState& state, int agent, const RuleOptions& options) {
    const std::size_t n = state.inst().num_nodes();
    Mask mask(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        mask[v] = is_feasible(state, agent, static_cast<int>(v), options) ? 1 : 0;
    }
    return mask;
}

MoveDelta apply_move(const EnvState& state, int agent, int node, const RuleOptions& options) {
    const auto& inst = state.inst();
    const auto& a = state.agents[agent];
    MoveDelta d;
    d.distance = inst.time(a.location, node);
    d.arrival = a.clock + d.distance;
    if (inst.is_depot[node]) {
        d.service_start = d.arrival;
        d.depart = d.arrival;
        return d;
    }

    const Problem problem = inst.problem;
    d.service_start = service_start_time(inst, node, d.arrival);
    d.depart = d.service_start + inst.service_time[node];
    if (has_soft_windows(problem)) {
        const auto& sp = *inst.soft_params;
        const double t =
            options.soft_basis == SoftPenaltyBasis::ServiceStart ? d.service_start : d.arrival;
        d.soft_penalty = 0.0 - (sp.early_rate * std::max(inst.tw_open[node] - t, 0.0) +
                                sp.late_rate * std::max(t - inst.tw_close[node], 0.0));
    }

    d.node_visited_after = true;
    switch (problem) {
    case Problem::TOPTW:
        break;
    case Problem::PDPTW:
        d.quantity = std::abs(inst.demand[node]);
        d.load_delta = inst.demand[node];
        break;
    case Problem::SDVRPTW:
        d.quantity = std::min(state.remaining_demand[node], inst.capacity - a.load);
        d.load_delta = d.quantity;
        d.node_visited_after = state.remaining_demand[node] - d.quantity <= kQuantityTolerance;
        break;
    default:
        d.quantity = inst.demand[node];
        d.load_delta = d.quantity;
        break;
    }
    if (collects_profit(problem)) {
        d.profit = inst.profit[node];
    }
    return d;
}

MoveRecord perform_move(EnvState& state, int agent, int node, const RuleOptions& options) {
    const auto& inst = state.inst();
    MoveRecord record;
    record.delta = apply_move(state, agent, node, options);
    const auto& d = record.delta;
    const auto r = dense_reward(inst.problem, d, d.distance);
    record.reward = r.reward;
    record.penalty = r.penalty;

    auto& a = state.agents[agent];
    a.location = node;
    a.clock = d.depart;
    a.load += d.load_delta;
    a.distance += d.distance;
    a.profit += d.profit;
    a.reward += r.reward;
    a.penalty += r.penalty;
    a.trace.push_back({node, d.arrival, d.service_start, d.quantity});

    if (node == a.home_depot) {
        a.active = false;
    } else if (!inst.is_depot[node]) {
        ++a.services;
        state.served_by[node] = agent;
        state.remaining_demand[node] =
            d.node_visited_after ? 0.0 : state.remaining_demand[node] - d.quantity;
        state.visited[node] = d.node_visited_after ? 1 : 0;
    }
    state.last_agent = agent;
    ++state.step_count;
    return record;
}

} // namespace mavrp
