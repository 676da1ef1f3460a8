#include "mavrp/observations.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "json.hpp"
#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(FeatureFamily family) {
    switch (family) {
    case FeatureFamily::NodesStatic: return "nodes_static";
    case FeatureFamily::NodesDynamic: return "nodes_dynamic";
    case FeatureFamily::Agent: return "agent";
    case FeatureFamily::OtherAgents: return "other_agents";
    case FeatureFamily::Global: return "global";
    }
    return "global";
}

const std::vector<std::string>& ObservationConfig::family(FeatureFamily f) const {
    switch (f) {
    case FeatureFamily::NodesStatic: return nodes_static;
    case FeatureFamily::NodesDynamic: return nodes_dynamic;
    case FeatureFamily::Agent: return agent;
    case FeatureFamily::OtherAgents: return other_agents;
    case FeatureFamily::Global: return global;
    }
    return global;
}

std::vector<std::string>& ObservationConfig::family(FeatureFamily f) {
    return const_cast<std::vector<std::string>&>(std::as_const(*this).family(f));
}

namespace {

constexpr std::array kFamilies{FeatureFamily::NodesStatic, FeatureFamily::NodesDynamic,
                               FeatureFamily::Agent, FeatureFamily::OtherAgents,
                               FeatureFamily::Global};

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// ---- nodes_static ----------------------------------------------------------

struct StaticScale {
    double horizon = 1.0;
    double capacity = 1.0;
    double max_profit = 0.0;
};

using StaticFn = double (*)(const InstanceData&, const StaticScale&, int);

struct StaticFeature {
    std::string_view name;
    StaticFn fn;
};

constexpr StaticFeature kStaticFeatures[] = {
    {"x", [](const InstanceData& i, const StaticScale&, int v) { return i.coords[v].x; }},
    {"y", [](const InstanceData& i, const StaticScale&, int v) { return i.coords[v].y; }},
    {"tw_open",
     [](const InstanceData& i, const StaticScale& s, int v) { return i.tw_open[v] / s.horizon; }},
    {"tw_close",
     [](const InstanceData& i, const StaticScale& s, int v) { return i.tw_close[v] / s.horizon; }},
    {"tw_width",
     [](const InstanceData& i, const StaticScale& s, int v) {
         return (i.tw_close[v] - i.tw_open[v]) / s.horizon;
     }},
    {"demand",
     [](const InstanceData& i, const StaticScale& s, int v) { return i.demand[v] / s.capacity; }},
    {"profit",
     [](const InstanceData& i, const StaticScale& s, int v) { return ratio(i.profit[v], s.max_profit); }},
    {"prize",
     [](const InstanceData& i, const StaticScale& s, int v) { return ratio(i.profit[v], s.max_profit); }},
    {"service_time",
     [](const InstanceData& i, const StaticScale& s, int v) {
         return i.service_time[v] / s.horizon;
     }},
    {"is_depot",
     [](const InstanceData& i, const StaticScale&, int v) { return i.is_depot[v] ? 1.0 : 0.0; }},
    {"is_pickup",
     [](const InstanceData& i, const StaticScale&, int v) { return i.is_pickup(v) ? 1.0 : 0.0; }},
    {"is_delivery",
     [](const InstanceData& i, const StaticScale&, int v) { return i.is_delivery(v) ? 1.0 : 0.0; }},
};

// ---- nodes_dynamic ---------------------------------------------------------

// Quantities for one node relative to the active agent. `after` is the clock
// once the move to the node and its service are complete; `end` is the
// agent's depot closing time.
struct DynamicRow {
    double open = 0.0;
    double close = 0.0;
    double clock = 0.0;
    double arrival = 0.0;
    double after = 0.0;
    double end = 0.0;
    double horizon = 1.0;
};

using DynamicFn = double (*)(const DynamicRow&);

struct DynamicFeature {
    std::string_view name;
    DynamicFn fn;
};

constexpr DynamicFeature kDynamicFeatures[] = {
    {"time_to_open", [](const DynamicRow& r) { return (r.open - r.clock) / r.horizon; }},
    {"time_to_close", [](const DynamicRow& r) { return (r.close - r.clock) / r.horizon; }},
    {"arrival_time", [](const DynamicRow& r) { return r.arrival / r.horizon; }},
    {"time_to_open_after_step", [](const DynamicRow& r) { return (r.open - r.after) / r.horizon; }},
    {"time_to_close_after_step",
     [](const DynamicRow& r) { return (r.close - r.after) / r.horizon; }},
    {"time_to_end_tour_after_step",
     [](const DynamicRow& r) { return (r.end - r.after) / r.horizon; }},
    {"frac_time_elapsed_after_step", [](const DynamicRow& r) { return clamp01(ratio(r.after, r.end)); }},
};

// ---- agent / other_agents --------------------------------------------------

struct AgentView {
    const EnvState* state = nullptr;
    int agent = 0;
    int active = 0;
    double horizon = 1.0;
    int feasible = 0;
    int num_services = 1;

    const AgentState& self() const { return state->agents[agent]; }
    const AgentState& focus() const { return state->agents[active]; }
    const InstanceData& inst() const { return state->inst(); }
};

using AgentFn = double (*)(const AgentView&);

struct AgentFeature {
    std::string_view name;
    AgentFn fn;
    bool other_only;
};

constexpr AgentFeature kAgentFeatures[] = {
    {"x", [](const AgentView& a) { return a.inst().coords[a.self().location].x; }, false},
    {"y", [](const AgentView& a) { return a.inst().coords[a.self().location].y; }, false},
    {"frac_time_elapsed",
     [](const AgentView& a) {
         return clamp01(ratio(a.self().clock, a.inst().depot_close(a.self().home_depot)));
     },
     false},
    {"frac_load", [](const AgentView& a) { return clamp01(a.self().load / a.inst().capacity); },
     false},
    {"time_to_depot",
     [](const AgentView& a) {
         return a.inst().time(a.self().location, a.self().home_depot) / a.horizon;
     },
     false},
    {"frac_feasible_nodes",
     [](const AgentView& a) { return clamp01(ratio(a.feasible, a.num_services)); }, false},
    {"frac_visited_nodes",
     [](const AgentView& a) { return clamp01(ratio(a.self().services, a.num_services)); }, false},
    {"dist_to_active",
     [](const AgentView& a) {
         return a.inst().time(a.self().location, a.focus().location) / a.horizon;
     },
     true},
    {"time_diff_to_active",
     [](const AgentView& a) { return (a.self().clock - a.focus().clock) / a.horizon; }, true},
    {"was_last_active",
     [](const AgentView& a) { return a.agent == a.state->last_agent ? 1.0 : 0.0; }, true},
};

// ---- global ----------------------------------------------------------------

double served_demand_fraction(const EnvState& s) {
    const auto& inst = s.inst();
    double total = 0.0;
    double served = 0.0;
    for (std::size_t i = 0; i < inst.num_nodes(); ++i) {
        if (inst.is_depot[i]) {
            continue;
        }
        if (inst.problem == Problem::PDPTW) {
            if (inst.demand[i] > 0.0) {
                total += inst.demand[i];
            } else if (s.visited[i]) {
                served += -inst.demand[i];
            }
        } else {
            total += inst.demand[i];
            served += inst.demand[i] - s.remaining_demand[i];
        }
    }
    return clamp01(ratio(served, total));
}

double profit_fraction(const EnvState& s) {
    double total = 0.0;
    for (double p : s.inst().profit) {
        total += p;
    }
    double collected = 0.0;
    for (const auto& a : s.agents) {
        collected += a.profit;
    }
    return clamp01(ratio(collected, total));
}

double fleet_capacity_fraction(const EnvState& s) {
    const auto& inst = s.inst();
    double available = 0.0;
    for (const auto& a : s.agents) {
        if (a.active) {
            available += inst.capacity - a.load;
        }
    }
    return clamp01(ratio(available, inst.capacity * static_cast<double>(s.agents.size())));
}

double done_agents_fraction(const EnvState& s) {
    const auto done = s.agents.size() - static_cast<std::size_t>(s.num_active());
    return ratio(static_cast<double>(done), static_cast<double>(s.agents.size()));
}

using GlobalFn = double (*)(const EnvState&);

struct GlobalFeature {
    std::string_view name;
    GlobalFn fn;
};

constexpr GlobalFeature kGlobalFeatures[] = {
    {"frac_served_demand", served_demand_fraction},
    {"frac_profit_collected", profit_fraction},
    {"frac_prizes_collected", profit_fraction},
    {"frac_fleet_capacity", fleet_capacity_fraction},
    {"frac_done_agents", done_agents_fraction},
};

template <typename Table>
const auto* find_feature(const Table& table, std::string_view name) {
    for (const auto& f : table) {
        if (f.name == name) {
            return &f;
        }
    }
    return static_cast<decltype(&table[0])>(nullptr);
}

bool known(FeatureFamily family, std::string_view name) {
    switch (family) {
    case FeatureFamily::NodesStatic: return find_feature(kStaticFeatures, name) != nullptr;
    case FeatureFamily::NodesDynamic: return find_feature(kDynamicFeatures, name) != nullptr;
    case FeatureFamily::Agent: {
        const auto* f = find_feature(kAgentFeatures, name);
        return f != nullptr && !f->other_only;
    }
    case FeatureFamily::OtherAgents: return find_feature(kAgentFeatures, name) != nullptr;
    case FeatureFamily::Global: return find_feature(kGlobalFeatures, name) != nullptr;
    }
    return false;
}

int count_feasible_services(const EnvState& s, int agent, const RuleOptions& rules) {
    const auto& inst = s.inst();
    int count = 0;
    for (std::size_t v = 0; v < inst.num_nodes(); ++v) {
        if (!inst.is_depot[v] && is_feasible(s, agent, static_cast<int>(v), rules)) {
            ++count;
        }
    }
    return count;
}

double scale_of(const InstanceData& inst) {
    const double h = inst.horizon();
    return h > 0.0 ? h : 1.0;
}

AgentView make_view(const EnvState& s, int agent, int feasible) {
    AgentView view;
    view.state = &s;
    view.agent = agent;
    view.active = s.active_agent;
    view.horizon = scale_of(s.inst());
    view.feasible = feasible;
    view.num_services = static_cast<int>(s.inst().num_services());
    return view;
}

} // namespace

ObservationConfig default_observation_config(Problem problem) {
    ObservationConfig c;
    switch (problem) {
    case Problem::TOPTW:
        c.nodes_static = {"x", "y", "tw_open", "tw_close", "profit", "service_time", "is_depot"};
        break;
    case Problem::PDPTW:
        c.nodes_static = {"x",           "y",        "tw_open",   "tw_close",   "demand",
                          "service_time", "is_depot", "is_pickup", "is_delivery"};
        break;
    case Problem::PCVRPTW:
        c.nodes_static = {"x", "y", "tw_open", "tw_close", "demand", "prize", "service_time",
                          "is_depot"};
        break;
    default:
        c.nodes_static = {"x", "y", "tw_open", "tw_close", "demand", "service_time", "is_depot"};
        break;
    }
    c.nodes_dynamic = {"time_to_open",
                       "time_to_close",
                       "arrival_time",
                       "time_to_open_after_step",
                       "time_to_close_after_step",
                       "time_to_end_tour_after_step",
                       "frac_time_elapsed_after_step"};
    const std::vector<std::string> relative = {"dist_to_active", "time_diff_to_active",
                                               "was_last_active"};
    if (problem == Problem::TOPTW) {
        c.agent = {"x", "y", "frac_time_elapsed", "time_to_depot"};
        c.other_agents = {"x", "y", "frac_time_elapsed", "time_to_depot", "frac_feasible_nodes",
                          "frac_visited_nodes"};
        c.global = {"frac_profit_collected", "frac_done_agents"};
    } else {
        c.agent = {"x",           "y", "frac_time_elapsed", "frac_load", "time_to_depot",
                   "frac_feasible_nodes", "frac_visited_nodes"};
        c.other_agents = c.agent;
        c.global = {"frac_served_demand", "frac_fleet_capacity", "frac_done_agents"};
        if (problem == Problem::PCVRPTW) {
            c.global.insert(c.global.begin() + 1, "frac_prizes_collected");
        }
    }
    c.other_agents.insert(c.other_agents.end(), relative.begin(), relative.end());
    return c;
}

std::vector<std::string> available_features(FeatureFamily family) {
    std::vector<std::string> out;
    auto collect = [&](const auto& table) {
        for (const auto& f : table) {
            if (known(family, f.name)) {
                out.emplace_back(f.name);
            }
        }
    };
    switch (family) {
    case FeatureFamily::NodesStatic: collect(kStaticFeatures); break;
    case FeatureFamily::NodesDynamic: collect(kDynamicFeatures); break;
    case FeatureFamily::Agent:
    case FeatureFamily::OtherAgents: collect(kAgentFeatures); break;
    case FeatureFamily::Global: collect(kGlobalFeatures); break;
    }
    return out;
}

ObservationConfig decode_observation_config(std::string_view text, Problem problem) {
    ObservationConfig config = default_observation_config(problem);
    try {
        const auto doc = nlohmann::json::parse(text);
        if (!doc.is_object()) {
            throw Error(ErrorCode::DecodeError, "observation config must be a JSON object");
        }
        for (const auto& [key, value] : doc.items()) {
            bool matched = false;
            for (auto f : kFamilies) {
                if (to_string(f) == key) {
                    config.family(f) = value.get<std::vector<std::string>>();
                    matched = true;
                }
            }
            if (!matched) {
                throw Error(ErrorCode::DecodeError, "unknown observation family '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::DecodeError, e.what());
    }
    ObservationBuilder check(config);
    return config;
}

std::string encode_observation_config(const ObservationConfig& config) {
    nlohmann::json doc;
    for (auto f : kFamilies) {
        doc[std::string(to_string(f))] = config.family(f);
    }
    return doc.dump();
}

ObservationBuilder::ObservationBuilder(ObservationConfig config) : config_(std::move(config)) {
    for (auto family : kFamilies) {
        const auto& names = config_.family(family);
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!known(family, names[i])) {
                throw Error(ErrorCode::InputError, "unknown " + std::string(to_string(family)) +
                                                       " feature '" + names[i] + "'");
            }
            if (std::find(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i),
                          names[i]) != names.begin() + static_cast<std::ptrdiff_t>(i)) {
                throw Error(ErrorCode::InputError, "duplicate feature '" + names[i] + "'");
            }
            if (names[i] == "frac_feasible_nodes") {
                needs_feasible_counts_ = true;
            }
        }
    }
}

Matrix ObservationBuilder::nodes_static(const InstanceData& inst) const {
    StaticScale scale;
    scale.horizon = scale_of(inst);
    scale.capacity = inst.capacity;
    for (double p : inst.profit) {
        scale.max_profit = std::max(scale.max_profit, p);
    }
    const auto& names = config_.nodes_static;
    Matrix out(inst.num_nodes(), names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
        const auto fn = find_feature(kStaticFeatures, names[c])->fn;
        for (std::size_t v = 0; v < inst.num_nodes(); ++v) {
            out(v, c) = fn(inst, scale, static_cast<int>(v));
        }
    }
    return out;
}

Matrix ObservationBuilder::nodes_dynamic(const EnvState& state, const RuleOptions& rules) const {
    const auto& inst = state.inst();
    const auto& names = config_.nodes_dynamic;
    Matrix out(inst.num_nodes(), names.size());
    if (state.active_agent < 0) {
        return out;
    }
    std::vector<DynamicFn> fns;
    for (const auto& name : names) {
        fns.push_back(find_feature(kDynamicFeatures, name)->fn);
    }
    const auto& agent = state.agents[state.active_agent];
    for (std::size_t v = 0; v < inst.num_nodes(); ++v) {
        const auto move = apply_move(state, state.active_agent, static_cast<int>(v), rules);
        DynamicRow row;
        row.open = inst.tw_open[v];
        row.close = inst.tw_close[v];
        row.clock = agent.clock;
        row.arrival = move.arrival;
        row.after = move.depart;
        row.end = inst.depot_close(agent.home_depot);
        row.horizon = scale_of(inst);
        for (std::size_t c = 0; c < fns.size(); ++c) {
            out(v, c) = fns[c](row);
        }
    }
    return out;
}

std::vector<double> ObservationBuilder::agent(const EnvState& state,
                                              const RuleOptions& rules) const {
    std::vector<double> out;
    if (state.active_agent < 0) {
        return out;
    }
    const int feasible =
        needs_feasible_counts_ ? count_feasible_services(state, state.active_agent, rules) : 0;
    const auto view = make_view(state, state.active_agent, feasible);
    for (const auto& name : config_.agent) {
        out.push_back(find_feature(kAgentFeatures, name)->fn(view));
    }
    return out;
}

Matrix ObservationBuilder::other_agents(const EnvState& state, const RuleOptions& rules) const {
    const auto& names = config_.other_agents;
    Matrix out(state.agents.size(), names.size());
    if (state.active_agent < 0) {
        return out;
    }
    std::vector<AgentFn> fns;
    for (const auto& name : names) {
        fns.push_back(find_feature(kAgentFeatures, name)->fn);
    }
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        if (!state.agents[i].active) {
            continue;
        }
        const int agent = static_cast<int>(i);
        const int feasible = needs_feasible_counts_ ? count_feasible_services(state, agent, rules) : 0;
        const auto view = make_view(state, agent, feasible);
        for (std::size_t c = 0; c < fns.size(); ++c) {
            out(i, c) = fns[c](view);
        }
    }
    return out;
}

std::vector<double> ObservationBuilder::global(const EnvState& state) const {
    std::vector<double> out;
    for (const auto& name : config_.global) {
        out.push_back(find_feature(kGlobalFeatures, name)->fn(state));
    }
    return out;
}

ObservationBundle ObservationBuilder::observe(const EnvState& state, const Matrix& nodes_static,
                                              const RuleOptions& rules) const {
    ObservationBundle bundle;
    const std::size_t n = state.inst().num_nodes();
    bundle.agents_mask.assign(state.agents.size(), 0);
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        bundle.agents_mask[i] = state.agents[i].active ? 1 : 0;
    }
    if (state.done || state.active_agent < 0) {
        bundle.action_mask.assign(n, 0);
        return bundle;
    }
    bundle.agent = state.active_agent;
    bundle.action_mask = mask_feasible(state, state.active_agent, rules);
    bundle.nodes_static = nodes_static;
    bundle.nodes_dynamic = nodes_dynamic(state, rules);
    bundle.agent_features = agent(state, rules);
    bundle.other_agents = other_agents(state, rules);
    bundle.global = global(state);
    return bundle;
}

} // namespace mavrp
