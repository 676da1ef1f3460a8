#pragma once

#include <string_view>

#include "mavrp/rng.hpp"
#include "mavrp/state.hpp"

namespace mavrp {

enum class SelectorKind { RoundRobin, SmallestTime, Random };

std::string_view to_string(SelectorKind kind);
SelectorKind selector_from_string(std::string_view name);

// All selectors require at least one active agent and return only active
// agents. Ties go to the lowest index.

/// Keeps the current agent until it retires, then moves on circularly.
int next_agent_round_robin(const EnvState& state);
/// Active agent with the smallest clock.
int next_agent_smallest_time(const EnvState& state);
/// Uniform over active agents.
int next_agent_random(const EnvState& state, Rng& rng);

/// Dispatches on kind; the random selector draws from state.rng.
int select_next_agent(SelectorKind kind, EnvState& state);

} // namespace mavrp
