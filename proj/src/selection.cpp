#include "mavrp/selection.hpp"

#include <string>
#include <vector>

#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(SelectorKind kind) {
    switch (kind) {
    case SelectorKind::RoundRobin: return "round_robin";
    case SelectorKind::SmallestTime: return "smallest_time";
    case SelectorKind::Random: return "random";
    }
    return "round_robin";
}

SelectorKind selector_from_string(std::string_view name) {
    for (auto k : {SelectorKind::RoundRobin, SelectorKind::SmallestTime, SelectorKind::Random}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error(ErrorCode::InputError, "unknown selector '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void no_active_agent() {
    throw Error(ErrorCode::InputError, "agent selection requires an active agent");
}

} // namespace

int next_agent_round_robin(const EnvState& state) {
    const int count = static_cast<int>(state.agents.size());
    const int current = state.active_agent;
    if (current >= 0 && state.agents[current].active) {
        return current;
    }
    const int start = current < 0 ? 0 : current + 1;
    for (int k = 0; k < count; ++k) {
        const int i = (start + k) % count;
        if (state.agents[i].active) {
            return i;
        }
    }
    no_active_agent();
}

int next_agent_smallest_time(const EnvState& state) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(state.agents.size()); ++i) {
        const auto& a = state.agents[i];
        if (a.active && (best < 0 || a.clock < state.agents[best].clock)) {
            best = i;
        }
    }
    if (best < 0) {
        no_active_agent();
    }
    return best;
}

int next_agent_random(const EnvState& state, Rng& rng) {
    std::vector<int> active;
    for (int i = 0; i < static_cast<int>(state.agents.size()); ++i) {
        if (state.agents[i].active) {
            active.push_back(i);
        }
    }
    if (active.empty()) {
        no_active_agent();
    }
    return active[rng.below(active.size())];
}

int select_next_agent(SelectorKind kind, EnvState& state) {
    switch (kind) {
    case SelectorKind::RoundRobin: return next_agent_round_robin(state);
    case SelectorKind::SmallestTime: return next_agent_smallest_time(state);
    case SelectorKind::Random: return next_agent_random(state, state.rng);
    }
    no_active_agent();
}

} // namespace mavrp
