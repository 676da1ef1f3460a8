#include "mavrp/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>

#include "mavrp/error.hpp"
#include "mavrp/state.hpp"

namespace mavrp {

namespace {

constexpr double kNoEpisode = -std::numeric_limits<double>::infinity();

struct Entry {
    double value = 0.0;
    int action = -1;
};

class Search {
public:
    Search(const InstanceData& inst, const OracleOptions& options)
        : inst_(inst), options_(options) {}

    double solve(const EnvState& state) {
        if (state.done) {
            const auto unserved = unserved_nodes(state);
            return terminal_penalty(inst_, unserved, options_.unserved_penalty_factor);
        }
        if (options_.max_depth > 0 && state.step_count >= options_.max_depth) {
            return kNoEpisode;
        }
        auto key = key_of(state);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second.value;
        }
        Entry best{kNoEpisode, -1};
        const int agent = state.active_agent;
        for (int v = 0; v < static_cast<int>(inst_.num_nodes()); ++v) {
            if (!is_feasible(state, agent, v, options_.rules)) {
                continue;
            }
            EnvState next = state;
            const double gained = advance(next, v);
            const double value = gained + solve(next);
            if (best.action < 0 || value > best.value) {
                best = {value, v};
            }
        }
        memo_.emplace(std::move(key), best);
        return best.value;
    }

    int best_action(const EnvState& state) const { return memo_.at(key_of(state)).action; }

    // Mirrors Environment::step.
    double advance(EnvState& state, int node) const {
        const auto record = perform_move(state, state.active_agent, node, options_.rules);
        if (state.num_active() == 0) {
            state.done = true;
            state.active_agent = -1;
        } else {
            state.active_agent = select_next_agent(options_.selector, state);
        }
        return record.reward + record.penalty;
    }

    std::size_t size() const { return memo_.size(); }

private:
    static void put(std::string& key, long long x) {
        key.append(reinterpret_cast<const char*>(&x), sizeof(x));
    }
    static long long quantize(double x) { return std::llround(x * 1e9); }

    std::string key_of(const EnvState& state) const {
        std::string key;
        put(key, state.active_agent);
        if (options_.max_depth > 0) {
            put(key, state.step_count);
        }
        for (const auto& a : state.agents) {
            put(key, a.active ? a.location : -1);
            put(key, quantize(a.clock));
            put(key, quantize(a.load));
        }
        const bool pdp = inst_.problem == Problem::PDPTW;
        for (std::size_t i = 0; i < inst_.num_nodes(); ++i) {
            key.push_back(static_cast<char>(state.visited[i]));
            if (is_split_delivery(inst_.problem)) {
                put(key, quantize(state.remaining_demand[i]));
            }
            if (pdp) {
                put(key, state.served_by[i]);
            }
        }
        return key;
    }

    const InstanceData& inst_;
    OracleOptions options_;
    std::unordered_map<std::string, Entry> memo_;
};

} // namespace

OracleResult brute_force_optimum(const InstanceData& inst, const OracleOptions& options) {
    if (inst.num_services() > kOracleMaxServices || inst.num_agents() > kOracleMaxAgents) {
        throw Error(ErrorCode::OracleTooLarge,
                    std::to_string(inst.num_services()) + " services and " +
                        std::to_string(inst.num_agents()) + " agents exceed the oracle bound of " +
                        std::to_string(kOracleMaxServices) + " and " +
                        std::to_string(kOracleMaxAgents));
    }
    if (options.selector == SelectorKind::Random) {
        throw Error(ErrorCode::InputError, "the oracle needs a deterministic selector");
    }
    // Unreachable services are legal here: they simply stay unserved.
    auto report = validate_instance(inst);
    std::erase_if(report.violations,
                  [](const Violation& v) { return v.code == "NODE_UNREACHABLE"; });
    if (!report.ok()) {
        throw Error(ErrorCode::InvalidInstance, report.summary());
    }

    auto state = make_initial_state(std::shared_ptr<const InstanceData>(&inst, [](auto*) {}), 0);
    state.active_agent = select_next_agent(options.selector, state);
    Search search(inst, options);
    if (search.solve(state) == kNoEpisode) {
        throw Error(ErrorCode::InputError,
                    "max_depth " + std::to_string(options.max_depth) + " ends no episode");
    }

    OracleResult out;
    while (!state.done) {
        const int action = search.best_action(state);
        out.actions.push_back(action);
        search.advance(state, action);
    }
    const auto totals = sparse_reward(state, options.unserved_penalty_factor);
    out.objective = totals.reward;
    out.penalty = totals.penalty;
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        out.routes.push_back({static_cast<int>(i), state.agents[i].trace});
    }
    out.states_explored = search.size();
    return out;
}

} // namespace mavrp
