#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "mavrp/policies.hpp"
#include "mavrp/rules.hpp"

using namespace mavrp;
using testing::Builder;
using testing::start;

namespace {

// Feasibility restated clause by clause, independently of rules.cpp.
bool reference_feasible(const EnvState& s, int agent, int v) {
    const auto& inst = s.inst();
    const auto& a = s.agents[agent];
    if (!a.active) return false;
    if (inst.is_depot[v]) return v == a.home_depot;
    const bool split = inst.problem == Problem::SDVRPTW;
    if (split ? !(s.remaining_demand[v] > 1e-9) : s.visited[v] != 0) return false;
    if (inst.problem == Problem::PDPTW) {
        if (inst.pickup_of[v] >= 0) {
            const int p = inst.pickup_of[v];
            if (!s.visited[p] || s.served_by[p] != agent) return false;
        } else if (a.load + inst.demand[v] > inst.capacity + 1e-9) {
            return false;
        }
    } else if (split) {
        if (!(inst.capacity - a.load > 1e-9)) return false;
    } else if (inst.problem != Problem::TOPTW) {
        if (a.load + inst.demand[v] > inst.capacity + 1e-9) return false;
    }
    const double arrival = a.clock + std::hypot(inst.coords[v].x - inst.coords[a.location].x,
                                                inst.coords[v].y - inst.coords[a.location].y);
    double begin = std::max(arrival, inst.tw_open[v]);
    if (inst.problem == Problem::CVRPSTW) {
        const auto& sp = *inst.soft_params;
        if (arrival < inst.tw_open[v] - sp.max_violation - sp.max_wait - 1e-9) return false;
        if (arrival > inst.tw_close[v] + sp.max_violation + 1e-9) return false;
        begin = std::max(arrival, inst.tw_open[v] - sp.max_violation);
    } else if (begin > inst.tw_close[v] + 1e-9) {
        return false;
    }
    const double back = begin + inst.service_time[v] + inst.time(v, a.home_depot);
    return back <= inst.tw_close[a.home_depot] + 1e-9;
}

// Rolls random episodes and calls check(state) before every step.
template <typename Check>
void random_walks(const InstanceData& inst, int episodes, Check check) {
    auto shared = testing::share(inst);
    for (int e = 0; e < episodes; ++e) {
        EnvConfig config;
        config.compute_observations = false;
        config.selector = e % 2 ? SelectorKind::SmallestTime : SelectorKind::RoundRobin;
        Environment env(config);
        env.reset(shared, static_cast<std::uint64_t>(e));
        while (!env.done()) {
            check(env.state());
            env.step(env.sample_action());
        }
        check(env.state());
    }
}

} // namespace

TEST_CASE("TOPTW: no time to return after a late service") {
    const auto inst = Builder(Problem::TOPTW)
                          .depot({0.5, 0.5}, 0.0, 3.0)
                          .service({0.5, 0.6}, 0, 2.9, 3.0, 0.2, 1.0)
                          .agents({0})
                          .shared();
    const auto s = start(inst);
    CHECK_FALSE(is_feasible(s, 0, 1));
    CHECK(is_feasible(s, 0, 0));
}

TEST_CASE("SDVRPTW: partial delivery into residual capacity") {
    const auto inst = Builder(Problem::SDVRPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 0.7}, 7, 0.0, 3.0)
                          .agents({0, 0})
                          .shared();
    auto s = start(inst);
    s.agents[0].load = 7.0;
    REQUIRE(is_feasible(s, 0, 1));
    const auto d = apply_move(s, 0, 1);
    CHECK(d.quantity == 3.0);
    CHECK_FALSE(d.node_visited_after);
    perform_move(s, 0, 1);
    CHECK(s.remaining_demand[1] == 4.0);
    CHECK_FALSE(s.visited[1]);
    CHECK(s.agents[0].load == 10.0);
    CHECK_FALSE(is_feasible(s, 0, 1));
    CHECK(is_feasible(s, 1, 1));
}

TEST_CASE("PDPTW: deliveries belong to the agent that picked up") {
    const auto inst = Builder(Problem::PDPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 0.7}, 3, 0.0, 3.0)
                          .service({0.7, 0.5}, -3, 0.0, 3.0)
                          .pair(2, 1)
                          .agents({0, 0})
                          .shared();
    auto s = start(inst);
    CHECK(is_feasible(s, 0, 1));
    CHECK_FALSE(is_feasible(s, 0, 2));
    perform_move(s, 0, 1);
    CHECK(s.agents[0].load == 3.0);
    CHECK(is_feasible(s, 0, 2));
    CHECK_FALSE(is_feasible(s, 1, 2));
    const auto d = apply_move(s, 0, 2);
    CHECK(d.load_delta == -3.0);
    CHECK(d.quantity == 3.0);
}

TEST_CASE("PDPTW at reset: only pickups and the depot") {
    const auto inst = testing::share(generate_toy(Problem::PDPTW));
    const auto mask = mask_feasible(start(inst), 0);
    for (std::size_t v = 0; v < mask.size(); ++v) {
        CHECK(static_cast<bool>(mask[v]) == (v == 0 || inst->is_pickup(static_cast<int>(v))));
    }
}

TEST_CASE("soft windows: early arrival") {
    const auto inst = Builder(Problem::CVRPSTW)
                          .depot({0.5, 0.5}, 0.0, 10.0)
                          .service({0.5, 1.0}, 1, 2.0, 4.0)
                          .soft({1.0, 1.0, 1.0, 2.0})
                          .agents({0})
                          .shared();
    auto s = start(inst);
    REQUIRE(is_feasible(s, 0, 1));
    const auto d = apply_move(s, 0, 1);
    CHECK(d.arrival == doctest::Approx(0.5));
    CHECK(d.service_start == doctest::Approx(1.0));
    CHECK(d.soft_penalty == doctest::Approx(-1.0));

    RuleOptions by_arrival{SoftPenaltyBasis::Arrival};
    CHECK(apply_move(s, 0, 1, by_arrival).soft_penalty == doctest::Approx(-1.5));

    s.agents[0].clock = -0.6;
    CHECK_FALSE(is_feasible(s, 0, 1));
}

TEST_CASE("soft windows: late arrival") {
    const auto inst = Builder(Problem::CVRPSTW)
                          .depot({0.5, 0.5}, 0.0, 10.0)
                          .service({0.5, 1.0}, 1, 2.0, 4.0)
                          .soft({1.0, 1.0, 1.0, 2.0})
                          .agents({0})
                          .shared();
    auto s = start(inst);
    s.agents[0].clock = 4.5;
    REQUIRE(is_feasible(s, 0, 1));
    const auto d = apply_move(s, 0, 1);
    CHECK(d.service_start == doctest::Approx(5.0));
    CHECK(d.soft_penalty == doctest::Approx(-2.0));
    s.agents[0].clock = 4.6;
    CHECK_FALSE(is_feasible(s, 0, 1));
}

TEST_CASE("hard windows: wait then serve") {
    const auto inst = Builder(Problem::CVRPTW)
                          .depot({0.5, 0.5})
                          .service({0.5, 0.7}, 1, 0.5, 1.0, 0.1)
                          .agents({0})
                          .shared();
    auto s = start(inst);
    const auto d = apply_move(s, 0, 1);
    CHECK(d.arrival == doctest::Approx(0.2));
    CHECK(d.service_start == 0.5);
    CHECK(d.depart == doctest::Approx(0.6));
    perform_move(s, 0, 1);
    CHECK(s.agents[0].clock == doctest::Approx(0.6));
}

TEST_CASE("closed windows leave only the depot") {
    const auto inst = testing::share(generate_toy(Problem::CVRPTW));
    auto s = start(inst);
    s.agents[0].clock = 2.6;
    const auto mask = mask_feasible(s, 0);
    CHECK(std::count(mask.begin(), mask.end(), 1) == 1);
    CHECK(mask[0] == 1);
}

TEST_CASE("MDVRPTW: foreign depots are never feasible") {
    const auto inst = testing::share(generate_toy(Problem::MDVRPTW));
    const auto s = start(inst);
    for (std::size_t a = 0; a < inst->num_agents(); ++a) {
        for (int d : inst->depots()) {
            CHECK(is_feasible(s, static_cast<int>(a), d) == (d == inst->agent_home_depot[a]));
        }
    }
}

TEST_CASE("masks agree with the clause-by-clause reference") {
    for (auto p : kAllProblems) {
        CAPTURE(to_string(p));
        for (std::uint64_t seed : {1, 2}) {
            random_walks(generate_random(default_generation_spec(p, 12), seed), 20,
                         [](const EnvState& s) {
                             for (std::size_t a = 0; a < s.agents.size(); ++a) {
                                 for (std::size_t v = 0; v < s.inst().num_nodes(); ++v) {
                                     const int ai = static_cast<int>(a);
                                     const int vi = static_cast<int>(v);
                                     REQUIRE(is_feasible(s, ai, vi) == reference_feasible(s, ai, vi));
                                 }
                             }
                         });
        }
    }
}

TEST_CASE("mask soundness: feasible moves never break hard constraints") {
    for (auto p : kAllProblems) {
        CAPTURE(to_string(p));
        random_walks(generate_random(default_generation_spec(p, 20), 5), 30, [p](const EnvState& s) {
            if (s.done) return;
            const auto& inst = s.inst();
            const int a = s.active_agent;
            for (std::size_t v = 0; v < inst.num_nodes(); ++v) {
                if (!is_feasible(s, a, static_cast<int>(v))) continue;
                const auto d = apply_move(s, a, static_cast<int>(v));
                const double load = s.agents[a].load + d.load_delta;
                REQUIRE(load >= -1e-9);
                REQUIRE(load <= inst.capacity + 1e-9);
                REQUIRE(d.service_start >= d.arrival);
                if (!has_soft_windows(p) && !inst.is_depot[v]) {
                    REQUIRE(d.service_start >= inst.tw_open[v]);
                    REQUIRE(d.service_start <= inst.tw_close[v] + 1e-9);
                }
                REQUIRE(d.soft_penalty <= 0.0);
            }
        });
    }
}

TEST_CASE("SDVRPTW conservation and PDPTW pairing over episodes") {
    const auto sd = generate_random(default_generation_spec(Problem::SDVRPTW, 20), 8);
    random_walks(sd, 40, [&](const EnvState& s) {
        if (!s.done) return;
        std::map<int, double> delivered;
        for (const auto& a : s.agents) {
            for (const auto& v : a.trace) {
                delivered[v.node] += v.quantity;
            }
        }
        for (std::size_t i = 0; i < sd.num_nodes(); ++i) {
            if (sd.is_depot[i]) continue;
            REQUIRE(delivered[static_cast<int>(i)] <= sd.demand[i] + 1e-9);
            REQUIRE(delivered[static_cast<int>(i)] + s.remaining_demand[i] ==
                    doctest::Approx(sd.demand[i]));
        }
    });

    const auto pd = generate_random(default_generation_spec(Problem::PDPTW, 20), 8);
    random_walks(pd, 40, [&](const EnvState& s) {
        if (!s.done) return;
        for (const auto& a : s.agents) {
            for (std::size_t k = 0; k < a.trace.size(); ++k) {
                const int node = a.trace[k].node;
                const int p = pd.pickup_of[node];
                if (p < 0) continue;
                const auto before = std::find_if(a.trace.begin(), a.trace.begin() + k,
                                                 [&](const Visit& v) { return v.node == p; });
                REQUIRE(before != a.trace.begin() + k);
            }
        }
    });
}
