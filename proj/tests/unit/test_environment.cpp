#include <array>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "mavrp/error.hpp"
#include "mavrp/policies.hpp"

using namespace mavrp;

TEST_CASE("reset on the toy") {
    Environment env;
    const auto inst = testing::share(generate_toy(Problem::CVRPTW));
    const auto obs = env.reset(inst, 0);
    CHECK_FALSE(env.done());
    CHECK(env.stats_report().services_served == 0);
    CHECK(obs.agent == 0);
    CHECK(obs.action_mask == Mask(7, 1));
    CHECK(env.feasible_actions() == Mask(7, 1));
    for (const auto& a : env.state().agents) {
        CHECK(a.location == 0);
        CHECK(a.clock == 0.0);
        CHECK(a.load == 0.0);
    }
}

TEST_CASE("reset on MDVRPTW splits agents across depots") {
    Environment env;
    const auto inst = testing::share(generate_toy(Problem::MDVRPTW));
    env.reset(inst, 0);
    std::set<int> homes;
    for (const auto& a : env.state().agents) {
        homes.insert(a.location);
        CHECK(a.location == a.home_depot);
    }
    CHECK(homes.size() == 2);
}

TEST_CASE("reset is deterministic per seed") {
    const auto inst = testing::share(generate_random(default_generation_spec(Problem::CVRPTW, 20), 1));
    auto actions = [&](std::uint64_t seed) {
        Environment env;
        env.reset(inst, seed);
        std::vector<int> out;
        while (!env.done()) {
            out.push_back(env.sample_action());
            env.step(out.back());
        }
        return out;
    };
    CHECK(actions(5) == actions(5));
    CHECK(actions(5) != actions(6));
}

TEST_CASE("reset rejects invalid instances") {
    auto bad = generate_toy(Problem::CVRPTW);
    bad.tw_open[2] = 2.9;
    Environment env;
    try {
        env.reset(testing::share(bad), 0);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInstance);
        CHECK(std::string(e.what()).find("WINDOW_INVERTED") != std::string::npos);
    }
}

TEST_CASE("step: worked move and retirement") {
    const auto inst = testing::Builder(Problem::CVRPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 0.7}, 1, 0.5, 1.0, 0.1)
                          .agents({0, 0})
                          .shared();
    Environment env;
    env.reset(inst, 0);
    auto out = env.step(1);
    CHECK(out.agent == 0);
    CHECK(out.reward == doctest::Approx(-0.2));
    CHECK(out.penalty == 0.0);
    CHECK(out.next_agent == 0);
    CHECK(env.state().agents[0].clock == doctest::Approx(0.6));

    out = env.step(0);
    CHECK_FALSE(env.state().agents[0].active);
    CHECK(out.next_agent == 1);
    CHECK_FALSE(out.done);

    out = env.step(0);
    CHECK(out.done);
    REQUIRE(out.stats.has_value());
    CHECK(out.stats->services_served == 1);
    CHECK(out.stats->agents_used == 1);
    CHECK(out.stats->objective == doctest::Approx(0.4));
    CHECK(out.stats->demand_served_fraction == 1.0);
    CHECK(out.stats->steps == 3);
    CHECK_THROWS_AS(env.step(0), Error);
}

TEST_CASE("step rejects masked actions") {
    Environment env;
    env.reset(testing::share(generate_toy(Problem::PDPTW)), 0);
    int delivery = -1;
    for (int v = 0; v < 7; ++v) {
        if (env.state().inst().is_delivery(v)) delivery = v;
    }
    try {
        env.step(delivery);
        FAIL("expected MASK_VIOLATION");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MaskViolation);
    }
    CHECK_THROWS_AS(env.step(99), Error);
    CHECK(env.state().step_count == 0);
}

TEST_CASE("sample_action is uniform over the mask") {
    Mask mask{0, 1, 0, 1, 1, 0};
    Rng rng(77);
    std::array<int, 6> counts{};
    constexpr int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
        ++counts[sample_from_mask(mask, rng)];
    }
    CHECK(counts[0] + counts[2] + counts[5] == 0);
    const double sigma = std::sqrt(kDraws * (1.0 / 3) * (2.0 / 3));
    for (int v : {1, 3, 4}) {
        CHECK(std::abs(counts[v] - kDraws / 3.0) <= 3 * sigma);
    }
    Mask single{0, 0, 1};
    CHECK(sample_from_mask(single, rng) == 2);
    CHECK_THROWS_AS(sample_from_mask(Mask{0, 0}, rng), Error);
}

TEST_CASE("random rollouts visit every service at most once") {
    for (auto p : kAllProblems) {
        if (p == Problem::SDVRPTW) continue;
        const auto inst = testing::share(generate_toy(p));
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto stats = run_episode(inst, policy_random, {}, seed);
            std::multiset<int> seen;
            for (const auto& r : stats.routes) {
                for (const auto& v : r.visits) {
                    if (!inst->is_depot[v.node]) seen.insert(v.node);
                }
            }
            for (int v : seen) {
                REQUIRE(seen.count(v) == 1);
            }
            CHECK(static_cast<int>(seen.size()) == stats.services_served);
        }
    }
}

TEST_CASE("episodes terminate within the step bound") {
    for (auto p : kAllProblems) {
        const auto inst = testing::share(generate_random(default_generation_spec(p, 20), 2));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto stats = run_episode(inst, policy_random, {}, seed);
            int bound = static_cast<int>(inst->num_nodes() + inst->num_agents());
            if (p == Problem::SDVRPTW) {
                bound = static_cast<int>(inst->num_agents());
                for (double d : inst->demand) bound += static_cast<int>(std::ceil(d / inst->capacity));
                bound += static_cast<int>(inst->num_agents());
            }
            CHECK(stats.steps <= bound);
        }
    }
}

TEST_CASE("batch of one equals a single rollout") {
    const auto inst = testing::share(generate_toy(Problem::TOPTW));
    const auto single = run_episode(inst, policy_greedy_ratio, {}, 4);
    const auto batch = batch_rollout({inst}, policy_greedy_ratio, {}, {4});
    REQUIRE(batch.size() == 1);
    REQUIRE(batch[0].stats.has_value());
    CHECK(*batch[0].stats == single);
}

TEST_CASE("parallel batches match sequential ones") {
    const auto spec = default_generation_spec(Problem::SDVRPTW, 20);
    std::vector<std::shared_ptr<const InstanceData>> instances;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 64; ++s) {
        instances.push_back(testing::share(generate_random(spec, 100000 + s)));
        seeds.push_back(s * 13);
    }
    EnvConfig config;
    config.selector = SelectorKind::Random;
    const auto seq = batch_rollout(instances, policy_random, config, seeds, {1});
    const auto par = batch_rollout(instances, policy_random, config, seeds, {4});
    REQUIRE(seq.size() == 64);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        REQUIRE(seq[i].stats.has_value());
        REQUIRE(par[i].stats.has_value());
        CHECK(*seq[i].stats == *par[i].stats);
        CHECK(seq[i].stats->instance == instances[i]->name);
    }
}

TEST_CASE("batches reject mixed sizes and problems") {
    const auto a = testing::share(generate_random(default_generation_spec(Problem::CVRPTW, 50), 1));
    const auto b = testing::share(generate_random(default_generation_spec(Problem::CVRPTW, 100), 1));
    const auto c = testing::share(generate_random(default_generation_spec(Problem::TOPTW, 50), 1));
    try {
        batch_rollout({a, b}, policy_random, {});
        FAIL("expected SIZE_MISMATCH");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeMismatch);
    }
    try {
        batch_rollout({a, c}, policy_random, {});
        FAIL("expected PROBLEM_MISMATCH");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ProblemMismatch);
    }
    BatchOptions mixed;
    mixed.allow_mixed_sizes = true;
    CHECK(batch_rollout({a, b}, policy_random, {}, {}, mixed).size() == 2);
}

TEST_CASE("per-instance failures do not abort the batch") {
    auto bad = generate_toy(Problem::CVRPTW);
    bad.name = "bad";
    bad.capacity = -1.0;
    const auto good = testing::share(generate_toy(Problem::CVRPTW));
    const auto results = batch_rollout({good, testing::share(bad), good}, policy_greedy_nearest, {});
    CHECK(results[0].stats.has_value());
    CHECK_FALSE(results[1].stats.has_value());
    CHECK(results[1].error.find("INVALID_INSTANCE") != std::string::npos);
    CHECK(results[2].stats.has_value());
}

TEST_CASE("stats on a partial episode") {
    Environment env;
    env.reset(testing::share(generate_toy(Problem::TOPTW)), 0);
    env.step(2);
    const auto s = env.stats_report();
    CHECK(s.services_served == 1);
    CHECK(s.objective == 2.0);
    CHECK(s.profit_collected_fraction == doctest::Approx(2.0 / 21));
}
