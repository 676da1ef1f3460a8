#include "mavrp/generation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "mavrp/error.hpp"
#include "mavrp/rng.hpp"

namespace mavrp {

std::string_view to_string(ProfitMode mode) {
    switch (mode) {
    case ProfitMode::None: return "none";
    case ProfitMode::Uniform: return "uniform";
    case ProfitMode::DemandProportional: return "demand_proportional";
    }
    return "none";
}

ProfitMode profit_mode_from_string(std::string_view name) {
    for (ProfitMode m : {ProfitMode::None, ProfitMode::Uniform, ProfitMode::DemandProportional}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw Error(ErrorCode::InputError, "unknown profit mode '" + std::string(name) + "'");
}

std::string_view to_string(Split split) {
    switch (split) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
    }
    return "train";
}

Split split_from_string(std::string_view name) {
    for (Split s : {Split::Train, Split::Validation, Split::Test}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw Error(ErrorCode::InputError, "unknown split '" + std::string(name) + "'");
}

std::pair<std::uint64_t, std::uint64_t> split_seed_range(Split split) {
    switch (split) {
    case Split::Train: return {0, 100000};
    case Split::Validation: return {100000, 200000};
    case Split::Test: return {200000, 300000};
    }
    return {0, 0};
}

void GenerationSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InputError, msg); };
    if (num_services < 1) fail("num_services must be positive");
    if (num_agents < 1) fail("num_agents must be positive");
    if (num_depots < 1) fail("num_depots must be positive");
    if (problem != Problem::MDVRPTW && num_depots != 1) fail("only MDVRPTW has several depots");
    if (problem == Problem::PDPTW && num_services % 2 != 0) {
        fail("PDPTW needs an even number of services (pickup/delivery pairs)");
    }
    if (!(capacity > 0.0)) fail("capacity must be positive");
    if (!(horizon > 0.0)) fail("horizon must be positive");
    if (!(tw_width_range.first > 0.0) || tw_width_range.first > tw_width_range.second ||
        tw_width_range.second > horizon) {
        fail("tw_width_range must satisfy 0 < min <= max <= horizon");
    }
    if (service_time < 0.0) fail("service_time must be non-negative");
    if (demand_range.first < 0 || demand_range.first > demand_range.second) {
        fail("demand_range must satisfy 0 <= min <= max");
    }
    if (demand_range.second > capacity) fail("demand_range max exceeds capacity");
    if (profit_range.first < 0 || profit_range.first > profit_range.second) {
        fail("profit_range must satisfy 0 <= min <= max");
    }
    if (has_soft_windows(problem) && !soft_params) fail("CVRPSTW requires soft_params");
}

GenerationSpec default_generation_spec(Problem problem, int num_services) {
    GenerationSpec spec;
    spec.problem = problem;
    spec.num_services = num_services;
    spec.capacity = num_services <= 50 ? 40.0 : 50.0;
    spec.num_agents = collects_profit(problem) ? 5 : 25;
    spec.num_depots = problem == Problem::MDVRPTW ? 5 : 1;
    spec.profit_mode = collects_profit(problem) ? ProfitMode::Uniform : ProfitMode::None;
    if (has_soft_windows(problem)) {
        spec.soft_params = SoftParams{0.2, 1.0, 1.0, 1.0};
    }
    return spec;
}

void InstanceSet::validate() const {
    const auto [lo, hi] = split_seed_range(split);
    std::set<std::uint64_t> seen;
    for (auto s : seeds) {
        if (s < lo || s >= hi) {
            throw Error(ErrorCode::InputError, "seed " + std::to_string(s) + " outside the " +
                                                   std::string(to_string(split)) + " range");
        }
        if (!seen.insert(s).second) {
            throw Error(ErrorCode::InputError, "duplicate seed " + std::to_string(s));
        }
    }
}

InstanceSet make_instance_set(Split split, const GenerationSpec& spec, std::size_t count,
                              std::uint64_t offset) {
    InstanceSet set{split, {}, spec};
    const auto first = split_seed_range(split).first + offset;
    for (std::size_t i = 0; i < count; ++i) {
        set.seeds.push_back(first + i);
    }
    set.validate();
    return set;
}

namespace {

InstanceData empty_instance(Problem problem, std::size_t n) {
    InstanceData inst;
    inst.problem = problem;
    inst.coords.assign(n, Point{});
    inst.is_depot.assign(n, 0);
    inst.demand.assign(n, 0.0);
    inst.profit.assign(n, 0.0);
    inst.service_time.assign(n, 0.0);
    inst.tw_open.assign(n, 0.0);
    inst.tw_close.assign(n, 0.0);
    inst.pickup_of.assign(n, -1);
    return inst;
}

} // namespace

InstanceData generate_toy(Problem problem) {
    constexpr int kServices = 6;
    constexpr double kHorizon = 3.0;
    const int num_depots = problem == Problem::MDVRPTW ? 2 : 1;
    InstanceData inst = empty_instance(problem, static_cast<std::size_t>(num_depots + kServices));
    inst.name = "toy_" + std::string(to_string(problem));
    inst.capacity = 10.0;

    if (num_depots == 1) {
        inst.coords[0] = {0.5, 0.5};
    } else {
        inst.coords[0] = {0.25, 0.5};
        inst.coords[1] = {0.75, 0.5};
    }
    for (int d = 0; d < num_depots; ++d) {
        inst.is_depot[d] = 1;
        inst.tw_open[d] = 0.0;
        inst.tw_close[d] = kHorizon;
    }

    for (int k = 0; k < kServices; ++k) {
        const int node = num_depots + k;
        const double angle = k * std::numbers::pi / 3.0;
        inst.coords[node] = {0.5 + 0.2 * std::cos(angle), 0.5 + 0.2 * std::sin(angle)};
        inst.service_time[node] = 0.1;
        inst.tw_open[node] = k % 2 == 0 ? 0.3 : 1.0;
        inst.tw_close[node] = k % 2 == 0 ? 1.5 : 2.5;
        const double q = k + 1;
        switch (problem) {
        case Problem::TOPTW:
            inst.profit[node] = q;
            break;
        case Problem::PCVRPTW:
            inst.demand[node] = q;
            inst.profit[node] = q;
            break;
        case Problem::PDPTW:
            // Vertex k + 3 is opposite vertex k.
            if (k < kServices / 2) {
                inst.demand[node] = q;
            } else {
                const int pickup = node - kServices / 2;
                inst.pickup_of[node] = pickup;
                inst.demand[node] = -inst.demand[pickup];
            }
            break;
        default:
            inst.demand[node] = q;
            break;
        }
    }

    inst.agent_home_depot = num_depots == 1 ? std::vector<int>{0, 0} : std::vector<int>{0, 1};
    if (has_soft_windows(problem)) {
        inst.soft_params = SoftParams{0.2, 0.5, 1.0, 2.0};
    }
    refresh_travel_matrix(inst);
    return inst;
}

InstanceData generate_random(const GenerationSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    const int depots = spec.num_depots;
    const int services = spec.num_services;
    const int n = depots + services;

    InstanceData inst = empty_instance(spec.problem, static_cast<std::size_t>(n));
    inst.name = std::string(to_string(spec.problem)) + "_" + std::to_string(services) + "_" +
                std::to_string(seed);
    inst.seed = seed;
    inst.capacity = spec.capacity;
    inst.soft_params = has_soft_windows(spec.problem) ? spec.soft_params : std::nullopt;

    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        inst.coords[i] = {x, y};
    }
    for (int d = 0; d < depots; ++d) {
        inst.is_depot[d] = 1;
        inst.tw_open[d] = 0.0;
        inst.tw_close[d] = spec.horizon;
    }
    for (int a = 0; a < spec.num_agents; ++a) {
        inst.agent_home_depot.push_back(a % depots);
    }
    refresh_travel_matrix(inst);
    const auto& t = inst.travel_time;

    const int pairs = services / 2;
    const bool pdptw = spec.problem == Problem::PDPTW;
    auto draw_demand = [&] {
        return static_cast<double>(rng.integer(spec.demand_range.first, spec.demand_range.second));
    };
    for (int i = depots; i < n; ++i) {
        if (pdptw && i >= depots + pairs) {
            const int pickup = i - pairs;
            inst.pickup_of[i] = pickup;
            inst.demand[i] = -inst.demand[pickup];
        } else if (pdptw) {
            inst.demand[i] = std::max(1.0, draw_demand());
        } else if (spec.problem != Problem::TOPTW) {
            inst.demand[i] = draw_demand();
        }
    }

    // Windows are feasible by construction: the center is drawn so that an
    // out-and-back trip from the nearest depot fits inside both the window
    // and the horizon. PDPTW pickups also leave room for a widest-possible
    // delivery window, and deliveries open no earlier than the pickup can be
    // completed; pairs too far apart for that get per-node bounds only.
    constexpr int kMaxAttempts = 100;
    std::vector<std::uint8_t> paired_bounds(n, 0);
    for (int i = depots; i < n; ++i) {
        const int depot = nearest_depot(inst, i, true);
        const double s = spec.service_time;
        double earliest = t(depot, i);
        double latest_end = spec.horizon - t(i, depot) - s;
        if (pdptw && i < depots + pairs) {
            const int delivery = i + pairs;
            const double reserved = spec.horizon - s - t(i, delivery) - s -
                                    t(delivery, nearest_depot(inst, delivery, true)) -
                                    spec.tw_width_range.second;
            if (reserved - earliest >= spec.tw_width_range.second) {
                latest_end = std::min(latest_end, reserved);
                paired_bounds[i] = 1;
            }
        } else if (pdptw) {
            const int pickup = inst.pickup_of[i];
            if (paired_bounds[pickup]) {
                earliest = std::max(earliest, inst.tw_open[pickup] + s + t(pickup, i));
            }
        }
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            const double w = rng.uniform(spec.tw_width_range.first, spec.tw_width_range.second);
            const double lo = earliest + w / 2.0;
            const double hi = latest_end - w / 2.0;
            if (lo > hi) {
                continue;
            }
            const double center = rng.uniform(lo, hi);
            inst.tw_open[i] = center - w / 2.0;
            inst.tw_close[i] = center + w / 2.0;
            inst.service_time[i] = s;
            placed = true;
        }
        if (!placed) {
            throw Error(ErrorCode::InfeasibleSpec,
                        "no feasible time window for node " + std::to_string(i) + " after " +
                            std::to_string(kMaxAttempts) + " attempts");
        }
    }

    if (collects_profit(spec.problem)) {
        for (int i = depots; i < n; ++i) {
            switch (spec.profit_mode) {
            case ProfitMode::None:
                break;
            case ProfitMode::Uniform:
                inst.profit[i] = static_cast<double>(
                    rng.integer(spec.profit_range.first, spec.profit_range.second));
                break;
            case ProfitMode::DemandProportional:
                inst.profit[i] = spec.problem == Problem::TOPTW ? draw_demand() : inst.demand[i];
                break;
            }
        }
    }
    return inst;
}

Point apply_transform(Point p, int transform_id) {
    if (transform_id < 0 || transform_id >= kNumTransforms) {
        throw Error(ErrorCode::InputError,
                    "transform_id " + std::to_string(transform_id) + " outside 0..7");
    }
    double u = p.x - 0.5;
    double v = p.y - 0.5;
    if (transform_id >= 4) {
        u = -u;
    }
    for (int r = 0; r < transform_id % 4; ++r) {
        const double nu = -v;
        v = u;
        u = nu;
    }
    return {u + 0.5, v + 0.5};
}

int compose_transforms(int second, int first) {
    const int r2 = second % 4;
    const int s2 = second / 4;
    const int r1 = first % 4;
    const int s1 = first / 4;
    // S R^r = R^-r S
    const int r = (r2 + (s2 ? 4 - r1 : r1)) % 4;
    const int s = (s1 + s2) % 2;
    return r + 4 * s;
}

int inverse_transform(int transform_id) {
    if (transform_id >= 4) {
        return transform_id;
    }
    return (4 - transform_id) % 4;
}

InstanceData augment_instance(const InstanceData& inst, int transform_id) {
    if (transform_id < 0 || transform_id >= kNumTransforms) {
        throw Error(ErrorCode::InputError,
                    "transform_id " + std::to_string(transform_id) + " outside 0..7");
    }
    constexpr double kSlack = 1e-12;
    for (const auto& p : inst.coords) {
        if (p.x < -kSlack || p.x > 1.0 + kSlack || p.y < -kSlack || p.y > 1.0 + kSlack) {
            throw Error(ErrorCode::InputError, "augmentation needs coordinates in the unit square");
        }
    }
    InstanceData out = inst;
    if (transform_id == 0) {
        return out;
    }
    for (auto& p : out.coords) {
        p = apply_transform(p, transform_id);
    }
    refresh_travel_matrix(out);
    return out;
}

} // namespace mavrp
