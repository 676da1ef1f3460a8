#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mavrp/error.hpp"
#include "mavrp/policies.hpp"

using namespace mavrp;
using testing::Builder;

TEST_CASE("greedy nearest") {
    const auto inst = Builder(Problem::CVRPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 1.0}, 1, 0.0, 3.0)
                          .service({0.5, 0.3}, 1, 0.0, 3.0)
                          .service({0.5, 0.75}, 1, 0.0, 3.0)
                          .agents({0})
                          .shared();
    auto s = testing::start(inst);
    Rng rng;
    CHECK(policy_greedy_nearest(s, Mask{1, 1, 1, 0}, rng) == 2);
    CHECK(policy_greedy_nearest(s, Mask{1, 1, 1, 1}, rng) == 2);
    CHECK(policy_greedy_nearest(s, Mask{1, 0, 0, 0}, rng) == 0);
    CHECK(policy_greedy_nearest(s, Mask{1, 1, 0, 1}, rng) == 3);
}

TEST_CASE("greedy ratio") {
    // Profit 4 at cost 2 against profit 3 at cost 1.
    const auto inst = Builder(Problem::TOPTW)
                          .depot({0.0, 0.0}, 0.0, 10.0)
                          .service({2.0, 0.0}, 0, 0.0, 10.0, 0.0, 4.0)
                          .service({0.0, 1.0}, 0, 0.0, 10.0, 0.0, 3.0)
                          .service({0.0, 0.5}, 0, 0.0, 10.0, 0.0, 0.0)
                          .agents({0})
                          .shared();
    auto s = testing::start(inst);
    Rng rng;
    CHECK(policy_greedy_ratio(s, Mask{1, 1, 1, 1}, rng) == 2);
    CHECK(policy_greedy_ratio(s, Mask{1, 0, 0, 1}, rng) == 0);
}

TEST_CASE("random policy") {
    const auto inst = testing::share(generate_toy(Problem::CVRPTW));
    auto s = testing::start(inst);
    Rng a(3), b(3);
    const Mask mask{1, 0, 1, 1, 0, 0, 1};
    for (int i = 0; i < 100; ++i) {
        const int x = policy_random(s, mask, a);
        CHECK(mask[x] == 1);
        CHECK(x == policy_random(s, mask, b));
    }
    CHECK(policy_random(s, Mask{0, 0, 0, 1, 0, 0, 0}, a) == 3);
}

TEST_CASE("policies only pick mask-true actions") {
    for (auto p : kAllProblems) {
        const auto inst = testing::share(generate_random(default_generation_spec(p, 20), 3));
        for (auto name : policy_names()) {
            const auto policy = make_policy(name);
            Environment env;
            env.reset(inst, 1);
            Rng rng(1);
            while (!env.done()) {
                const auto mask = env.feasible_actions();
                const int a = policy(env.state(), mask, rng);
                REQUIRE(mask[a] == 1);
                env.step(a);
            }
        }
    }
    CHECK_THROWS_AS(make_policy("attention"), Error);
}

TEST_CASE("gap") {
    CHECK(gap(16.499, 14.478) == doctest::Approx(13.959).epsilon(1e-4));
    CHECK(std::round(gap(16.499, 14.478) * 10) / 10 == doctest::Approx(14.0));
    CHECK(std::round(gap(31.870, 33.245) * 10) / 10 == doctest::Approx(-4.1));
    CHECK(gap(7.5, 7.5) == 0.0);
    CHECK(gap(3.0 * 16.499, 3.0 * 14.478) == doctest::Approx(gap(16.499, 14.478)));
    CHECK_THROWS_AS(gap(1.0, 0.0), Error);
}

TEST_CASE("aggregate stats") {
    EpisodeStats a;
    a.problem = Problem::CVRPTW;
    a.objective = 10.0;
    a.agents_used = 3;
    a.demand_served_fraction = 1.0;
    auto single = aggregate_stats({a});
    CHECK(single.episodes == 1);
    CHECK(single.av_obj == 10.0);
    CHECK(single.av_agents_used == 3.0);
    CHECK(single.std_obj == 0.0);

    EpisodeStats b = a;
    b.objective = -20.0;
    b.agents_used = 5;
    const auto two = aggregate_stats({a, b});
    CHECK(two.av_obj == 15.0);
    CHECK(two.std_obj == 5.0);
    CHECK(two.av_agents_used == 4.0);
}
