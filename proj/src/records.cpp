#include "mavrp/records.hpp"

#include "json.hpp"

namespace mavrp {

namespace {

nlohmann::json routes_json(const std::vector<Route>& routes) {
    auto out = nlohmann::json::array();
    for (const auto& r : routes) {
        auto nodes = nlohmann::json::array();
        for (const auto& v : r.visits) {
            nodes.push_back(v.node);
        }
        out.push_back({{"agent", r.agent}, {"nodes", nodes}});
    }
    return out;
}

} // namespace

std::string episode_record(const EpisodeStats& s, bool with_routes) {
    nlohmann::json j = {
        {"record", "episode"},
        {"instance", s.instance},
        {"problem", to_string(s.problem)},
        {"seed", s.seed},
        {"objective", s.objective},
        {"total_reward", s.total_reward},
        {"total_penalty", s.total_penalty},
        {"total_distance", s.total_distance},
        {"agents_used", s.agents_used},
        {"services_served", s.services_served},
        {"num_services", s.num_services},
        {"demand_served_fraction", s.demand_served_fraction},
        {"profit_collected_fraction", s.profit_collected_fraction},
        {"steps", s.steps},
    };
    if (with_routes) {
        j["routes"] = routes_json(s.routes);
    }
    return j.dump();
}

std::string summary_record(const StatsSummary& s, Problem problem, int size,
                           std::string_view policy, std::string_view selector) {
    nlohmann::json j = {
        {"record", "summary"},
        {"problem", to_string(problem)},
        {"size", size},
        {"policy", policy},
        {"selector", selector},
        {"episodes", s.episodes},
        {"av_obj", s.av_obj},
        {"std_obj", s.std_obj},
        {"av_agents", s.av_agents_used},
        {"std_agents", s.std_agents_used},
        {"av_served_fraction", s.av_served_fraction},
        {"std_served_fraction", s.std_served_fraction},
        {"av_reward", s.av_reward},
        {"av_penalty", s.av_penalty},
    };
    return j.dump();
}

std::string oracle_record(const InstanceData& inst, const OracleResult& r) {
    nlohmann::json j = {
        {"record", "oracle"},
        {"instance", inst.name},
        {"problem", to_string(inst.problem)},
        {"objective", r.objective},
        {"penalty", r.penalty},
        {"total", r.total()},
        {"actions", r.actions},
        {"routes", routes_json(r.routes)},
        {"states_explored", r.states_explored},
    };
    return j.dump();
}

std::string error_record(std::string_view instance, std::string_view message) {
    return nlohmann::json{{"record", "error"}, {"instance", instance}, {"message", message}}.dump();
}

} // namespace mavrp
