#pragma once

#include <vector>

#include "mavrp/rewards.hpp"
#include "mavrp/rules.hpp"
#include "mavrp/selection.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

struct EvaluateOptions {
    /// Order in which agents' visits are interleaved during replay. Only
    /// matters when agents compete for the same demand (SDVRPTW).
    SelectorKind selector = SelectorKind::RoundRobin;
    RuleOptions rules;
    double unserved_penalty_factor = kDefaultUnservedPenaltyFactor;
};

struct Evaluation {
    /// Sparse reward of the replayed episode.
    double objective = 0.0;
    double penalty = 0.0;
    bool feasible = true;
    /// One entry per visit that broke a hard constraint; index is the node.
    std::vector<Violation> violations;
};

/// Replays routes with the engine's step semantics. Only Visit::node is
/// read. A route that does not end at its home depot is closed implicitly;
/// agents without a route stay home. Infeasible visits are reported and
/// still applied. Throws Error(InputError) for unknown node or agent indices
/// and for duplicate agents.
Evaluation evaluate_solution(const InstanceData& inst, const std::vector<Route>& routes,
                             const EvaluateOptions& options = {});

} // namespace mavrp
