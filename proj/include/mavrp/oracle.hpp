#pragma once

#include <cstddef>
#include <vector>

#include "mavrp/rewards.hpp"
#include "mavrp/rules.hpp"
#include "mavrp/selection.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

inline constexpr std::size_t kOracleMaxServices = 8;
inline constexpr std::size_t kOracleMaxAgents = 3;

struct OracleOptions {
    /// round_robin or smallest_time.
    SelectorKind selector = SelectorKind::RoundRobin;
    /// Longest action sequence considered; 0 means unbounded.
    int max_depth = 0;
    RuleOptions rules;
    double unserved_penalty_factor = kDefaultUnservedPenaltyFactor;
};

struct OracleResult {
    /// Sparse reward and penalty of the optimal episode.
    double objective = 0.0;
    double penalty = 0.0;
    double total() const { return objective + penalty; }
    std::vector<Route> routes;
    std::vector<int> actions;
    std::size_t states_explored = 0;
};

/// Exhaustive search over mask-legal action sequences, maximizing
/// reward + penalty. Ties keep the lowest action index. Throws
/// Error(OracleTooLarge) beyond kOracleMaxServices / kOracleMaxAgents and
/// Error(InputError) for the random selector or a max_depth too small to
/// finish any episode. Invalid instances are rejected with
/// Error(InvalidInstance), except that unreachable services are allowed.
OracleResult brute_force_optimum(const InstanceData& inst, const OracleOptions& options = {});

} // namespace mavrp
