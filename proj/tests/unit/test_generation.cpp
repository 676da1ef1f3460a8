#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "mavrp/error.hpp"

using namespace mavrp;

TEST_CASE("toy instances") {
    CHECK(generate_toy(Problem::CVRPTW).num_nodes() == 7);
    CHECK(generate_toy(Problem::MDVRPTW).depots().size() == 2);
    CHECK(generate_toy(Problem::MDVRPTW).num_nodes() == 8);
    for (auto p : kAllProblems) {
        const auto a = generate_toy(p);
        CHECK(a == generate_toy(p));
        CHECK(a.num_agents() == 2);
        CHECK(a.capacity == 10.0);
        CHECK(a.num_services() == 6);
    }
}

TEST_CASE("toy geometry and windows") {
    const auto inst = generate_toy(Problem::CVRPTW);
    CHECK(inst.coords[0] == Point{0.5, 0.5});
    for (int i = 1; i <= 6; ++i) {
        CHECK(inst.time(0, i) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(inst.service_time[i] == 0.1);
        const bool even = (i - 1) % 2 == 0;
        CHECK(inst.tw_open[i] == (even ? 0.3 : 1.0));
        CHECK(inst.tw_close[i] == (even ? 1.5 : 2.5));
    }
    CHECK(inst.depot_close(0) == 3.0);
}

TEST_CASE("toy PDPTW pairs opposite vertices") {
    const auto inst = generate_toy(Problem::PDPTW);
    int pairs = 0;
    for (std::size_t j = 0; j < inst.num_nodes(); ++j) {
        const int p = inst.pickup_of[j];
        if (p < 0) {
            continue;
        }
        ++pairs;
        CHECK(inst.demand[j] == -inst.demand[p]);
        CHECK(inst.time(p, static_cast<int>(j)) == doctest::Approx(0.4).epsilon(1e-12));
    }
    CHECK(pairs == 3);
}

TEST_CASE("random generation is a pure function of (spec, seed)") {
    for (auto p : kAllProblems) {
        const auto spec = default_generation_spec(p, 20);
        const auto a = generate_random(spec, 100001);
        const auto b = generate_random(spec, 100001);
        CHECK(a == b);
        CHECK(a.coords == b.coords);
        CHECK(a.coords != generate_random(spec, 100002).coords);
    }
}

TEST_CASE("random instances pass validation over a seed sweep") {
    for (auto p : kAllProblems) {
        CAPTURE(to_string(p));
        const auto spec = default_generation_spec(p, 50);
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            const auto inst = generate_random(spec, seed);
            const auto report = validate_instance(inst);
            REQUIRE_MESSAGE(report.ok(), report.summary());
            CHECK(inst.num_services() == 50);
            CHECK(inst.depots().size() == static_cast<std::size_t>(spec.num_depots));
        }
    }
}

TEST_CASE("random instances: sample space") {
    const auto spec = default_generation_spec(Problem::TOPTW, 50);
    const auto inst = generate_random(spec, 9);
    for (std::size_t i = 0; i < inst.num_nodes(); ++i) {
        CHECK(inst.coords[i].x >= 0.0);
        CHECK(inst.coords[i].x <= 1.0);
        if (inst.is_depot[i]) {
            CHECK(inst.tw_open[i] == 0.0);
            CHECK(inst.tw_close[i] == spec.horizon);
            continue;
        }
        const double w = inst.tw_close[i] - inst.tw_open[i];
        CHECK(w >= spec.tw_width_range.first - 1e-12);
        CHECK(w <= spec.tw_width_range.second + 1e-12);
        CHECK(inst.profit[i] >= spec.profit_range.first);
        CHECK(inst.profit[i] <= spec.profit_range.second);
        CHECK(inst.profit[i] == std::floor(inst.profit[i]));
    }
}

TEST_CASE("an impossible horizon is reported") {
    auto spec = default_generation_spec(Problem::CVRPTW, 20);
    spec.horizon = 0.01;
    spec.tw_width_range = {0.001, 0.005};
    try {
        generate_random(spec, 1);
        FAIL("expected INFEASIBLE_SPEC");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleSpec);
    }
}

TEST_CASE("spec validation") {
    auto spec = default_generation_spec(Problem::CVRPTW, 20);
    spec.demand_range = {1, 100};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = default_generation_spec(Problem::PDPTW, 21);
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = default_generation_spec(Problem::CVRPTW, 20);
    spec.tw_width_range = {0.2, 5.0};
    CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("default specs") {
    CHECK(default_generation_spec(Problem::CVRPTW, 50).capacity == 40.0);
    CHECK(default_generation_spec(Problem::CVRPTW, 100).capacity == 50.0);
    CHECK(default_generation_spec(Problem::CVRPTW, 50).num_agents == 25);
    CHECK(default_generation_spec(Problem::TOPTW, 50).num_agents == 5);
    CHECK(default_generation_spec(Problem::MDVRPTW, 50).num_depots == 5);
}

TEST_CASE("instance sets use disjoint seed ranges") {
    const auto spec = default_generation_spec(Problem::CVRPTW, 50);
    const auto set = make_instance_set(Split::Validation, spec, 2048);
    CHECK(set.seeds.size() == 2048);
    CHECK(set.seeds.front() == 100000);
    CHECK(set.seeds.back() == 102047);
    const auto train = split_seed_range(Split::Train);
    const auto val = split_seed_range(Split::Validation);
    const auto test = split_seed_range(Split::Test);
    CHECK(train.second <= val.first);
    CHECK(val.second <= test.first);

    InstanceSet bad{Split::Test, {5}, spec};
    CHECK_THROWS_AS(bad.validate(), Error);
    InstanceSet dup{Split::Train, {5, 5}, spec};
    CHECK_THROWS_AS(dup.validate(), Error);
}

TEST_CASE("transforms: identity and quarter turn") {
    const Point p{0.2, 0.3};
    CHECK(apply_transform(p, 0) == p);
    const auto q = apply_transform(p, 1);
    CHECK(q.x == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(apply_transform(p, 8), Error);
    CHECK_THROWS_AS(augment_instance(generate_toy(Problem::CVRPTW), -1), Error);
}

TEST_CASE("transforms form the dihedral group") {
    const Point p{0.13, 0.71};
    for (int a = 0; a < kNumTransforms; ++a) {
        const auto back = apply_transform(apply_transform(p, a), inverse_transform(a));
        CHECK(std::abs(back.x - p.x) < 1e-12);
        CHECK(std::abs(back.y - p.y) < 1e-12);
        CHECK(compose_transforms(inverse_transform(a), a) == 0);
        for (int b = 0; b < kNumTransforms; ++b) {
            const auto twice = apply_transform(apply_transform(p, b), a);
            const auto once = apply_transform(p, compose_transforms(a, b));
            CHECK(std::abs(twice.x - once.x) < 1e-12);
            CHECK(std::abs(twice.y - once.y) < 1e-12);
        }
    }
    std::set<std::pair<double, double>> images;
    for (int a = 0; a < kNumTransforms; ++a) {
        const auto q = apply_transform(p, a);
        images.insert({std::round(q.x * 1e9), std::round(q.y * 1e9)});
    }
    CHECK(images.size() == 8);
}

TEST_CASE("augmentation preserves distances and non-geometric fields") {
    const auto inst = generate_random(default_generation_spec(Problem::PDPTW, 20), 3);
    for (int a = 0; a < kNumTransforms; ++a) {
        const auto aug = augment_instance(inst, a);
        CHECK(aug.demand == inst.demand);
        CHECK(aug.tw_open == inst.tw_open);
        CHECK(aug.pickup_of == inst.pickup_of);
        for (std::size_t i = 0; i < inst.num_nodes(); ++i) {
            for (std::size_t j = 0; j < inst.num_nodes(); ++j) {
                REQUIRE(std::abs(aug.travel_time(i, j) - inst.travel_time(i, j)) <= 1e-9);
            }
        }
    }
    CHECK(augment_instance(inst, 0).coords == inst.coords);
}
