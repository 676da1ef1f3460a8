#include "doctest.h"
#include "helpers.hpp"
#include "mavrp/error.hpp"
#include "mavrp/evaluate.hpp"
#include "mavrp/oracle.hpp"
#include "mavrp/policies.hpp"

using namespace mavrp;

namespace {

Route route(int agent, std::vector<int> nodes) {
    Route r{agent, {}};
    for (int n : nodes) {
        r.visits.push_back(Visit{n});
    }
    return r;
}

} // namespace

TEST_CASE("no routes: every service is charged") {
    const auto inst = generate_toy(Problem::CVRPTW);
    const auto e = evaluate_solution(inst, {});
    CHECK(e.objective == 0.0);
    CHECK(e.penalty == doctest::Approx(-12.0));
    CHECK(e.feasible);
}

TEST_CASE("out and back") {
    const auto inst = testing::Builder(Problem::CVRPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 0.7}, 1, 0.0, 1.0)
                          .agents({0})
                          .build();
    const auto e = evaluate_solution(inst, {route(0, {1, 0})});
    CHECK(e.objective == doctest::Approx(-0.4));
    CHECK(e.penalty == 0.0);
    CHECK(e.feasible);
    // The closing depot visit is implicit.
    const auto f = evaluate_solution(inst, {route(0, {1})});
    CHECK(f.objective == e.objective);
}

TEST_CASE("infeasible visits are reported") {
    const auto inst = generate_toy(Problem::CVRPTW);
    const auto twice = evaluate_solution(inst, {route(0, {1, 1, 0})});
    CHECK_FALSE(twice.feasible);
    REQUIRE(twice.violations.size() == 1);
    CHECK(twice.violations[0].index == 1);

    const auto after = evaluate_solution(inst, {route(0, {1, 0, 2})});
    CHECK_FALSE(after.feasible);
}

TEST_CASE("bad indices are input errors") {
    const auto inst = generate_toy(Problem::CVRPTW);
    CHECK_THROWS_AS(evaluate_solution(inst, {route(0, {9})}), Error);
    CHECK_THROWS_AS(evaluate_solution(inst, {route(5, {1})}), Error);
    CHECK_THROWS_AS(evaluate_solution(inst, {route(0, {1}), route(0, {2})}), Error);
}

TEST_CASE("evaluation reproduces episode totals") {
    for (auto p : kAllProblems) {
        CAPTURE(to_string(p));
        const auto inst = testing::share(generate_random(default_generation_spec(p, 20), 6));
        for (auto selector : {SelectorKind::RoundRobin, SelectorKind::SmallestTime}) {
            EnvConfig config;
            config.selector = selector;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto stats = run_episode(inst, policy_random, config, seed);
                EvaluateOptions options;
                options.selector = selector;
                const auto e = evaluate_solution(*inst, stats.routes, options);
                CHECK(e.feasible);
                CHECK(std::abs(e.objective - stats.total_reward) <= 1e-6);
                CHECK(std::abs(e.penalty - stats.total_penalty) <= 1e-6);
            }
        }
    }
}

TEST_CASE("evaluation is pure") {
    const auto inst = generate_toy(Problem::CVRPSTW);
    const std::vector<Route> routes{route(0, {1, 2, 3, 0}), route(1, {4, 5, 0})};
    const auto a = evaluate_solution(inst, routes);
    const auto b = evaluate_solution(inst, routes);
    CHECK(a.objective == b.objective);
    CHECK(a.penalty == b.penalty);
}

TEST_CASE("oracle routes evaluate to the oracle objective") {
    for (auto p : kAllProblems) {
        const auto inst = generate_toy(p);
        const auto best = brute_force_optimum(inst);
        const auto e = evaluate_solution(inst, best.routes);
        CHECK(e.feasible);
        CHECK(e.objective == best.objective);
        CHECK(e.penalty == best.penalty);
    }
}
