#include "mavrp/policies.hpp"

#include <cmath>
#include <string>

#include "mavrp/error.hpp"

namespace mavrp {

namespace {

int home_of(const EnvState& state) {
    return state.agents[state.active_agent].home_depot;
}

double mean(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v, double m) {
    double sum = 0.0;
    for (double x : v) {
        sum += (x - m) * (x - m);
    }
    return v.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(v.size()));
}

} // namespace

int policy_random(const EnvState&, const Mask& mask, Rng& rng) {
    return sample_from_mask(mask, rng);
}

int policy_greedy_nearest(const EnvState& state, const Mask& mask, Rng&) {
    const auto& inst = state.inst();
    const int from = state.agents[state.active_agent].location;
    int best = -1;
    for (int v = 0; v < static_cast<int>(mask.size()); ++v) {
        if (!mask[v] || inst.is_depot[v]) {
            continue;
        }
        if (best < 0 || inst.time(from, v) < inst.time(from, best)) {
            best = v;
        }
    }
    return best < 0 ? home_of(state) : best;
}

int policy_greedy_ratio(const EnvState& state, const Mask& mask, Rng&) {
    const auto& inst = state.inst();
    const auto& agent = state.agents[state.active_agent];
    int best = -1;
    double best_ratio = 0.0;
    for (int v = 0; v < static_cast<int>(mask.size()); ++v) {
        if (!mask[v] || inst.is_depot[v] || inst.profit[v] <= 0.0) {
            continue;
        }
        const auto move = apply_move(state, state.active_agent, v);
        const double cost = move.depart - agent.clock;
        const double ratio = cost > 0.0 ? inst.profit[v] / cost : HUGE_VAL;
        if (best < 0 || ratio > best_ratio) {
            best = v;
            best_ratio = ratio;
        }
    }
    return best < 0 ? home_of(state) : best;
}

std::vector<std::string_view> policy_names() {
    return {"random", "greedy_nearest", "greedy_ratio"};
}

Policy make_policy(std::string_view name) {
    if (name == "random") return policy_random;
    if (name == "greedy_nearest") return policy_greedy_nearest;
    if (name == "greedy_ratio") return policy_greedy_ratio;
    throw Error(ErrorCode::InputError, "unknown policy '" + std::string(name) + "'");
}

double gap(double score_model, double score_ref) {
    if (score_ref == 0.0) {
        throw Error(ErrorCode::InputError, "gap needs a nonzero reference score");
    }
    return (score_model - score_ref) / score_ref * 100.0;
}

StatsSummary aggregate_stats(const std::vector<EpisodeStats>& stats) {
    StatsSummary s;
    s.episodes = static_cast<int>(stats.size());
    std::vector<double> obj, agents, served, reward, penalty;
    for (const auto& e : stats) {
        obj.push_back(minimizes(e.problem) ? std::abs(e.objective) : e.objective);
        agents.push_back(e.agents_used);
        served.push_back(e.demand_served_fraction);
        reward.push_back(e.total_reward);
        penalty.push_back(e.total_penalty);
    }
    s.av_obj = mean(obj);
    s.std_obj = stddev(obj, s.av_obj);
    s.av_agents_used = mean(agents);
    s.std_agents_used = stddev(agents, s.av_agents_used);
    s.av_served_fraction = mean(served);
    s.std_served_fraction = stddev(served, s.av_served_fraction);
    s.av_reward = mean(reward);
    s.av_penalty = mean(penalty);
    return s;
}

} // namespace mavrp
