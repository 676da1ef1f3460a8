#include "mavrp/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(Problem problem) {
    switch (problem) {
    case Problem::CVRPTW: return "CVRPTW";
    case Problem::CVRPSTW: return "CVRPSTW";
    case Problem::TOPTW: return "TOPTW";
    case Problem::PDPTW: return "PDPTW";
    case Problem::SDVRPTW: return "SDVRPTW";
    case Problem::PCVRPTW: return "PCVRPTW";
    case Problem::MDVRPTW: return "MDVRPTW";
    }
    return "UNKNOWN";
}

Problem problem_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Problem p : kAllProblems) {
        if (to_string(p) == upper) {
            return p;
        }
    }
    throw Error(ErrorCode::InputError, "unknown problem '" + std::string(name) + "'");
}

bool has_soft_windows(Problem p) { return p == Problem::CVRPSTW; }
bool is_split_delivery(Problem p) { return p == Problem::SDVRPTW; }
bool collects_profit(Problem p) { return p == Problem::TOPTW || p == Problem::PCVRPTW; }
bool penalizes_unserved(Problem p) { return !collects_profit(p); }
bool uses_capacity(Problem p) { return p != Problem::TOPTW; }
bool minimizes(Problem p) { return !collects_profit(p); }

std::size_t InstanceData::num_services() const {
    return static_cast<std::size_t>(std::count(is_depot.begin(), is_depot.end(), 0));
}

std::vector<int> InstanceData::depots() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < is_depot.size(); ++i) {
        if (is_depot[i]) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

double InstanceData::horizon() const {
    double h = 0.0;
    for (std::size_t i = 0; i < is_depot.size(); ++i) {
        if (is_depot[i]) {
            h = std::max(h, tw_close[i]);
        }
    }
    return h;
}

bool InstanceData::is_pickup(int node) const {
    return problem == Problem::PDPTW && !is_depot[node] && demand[node] > 0.0;
}

bool InstanceData::is_delivery(int node) const {
    return problem == Problem::PDPTW && !is_depot[node] && demand[node] < 0.0;
}

bool ValidationReport::has(std::string_view code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::summary() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    for (const auto& v : violations) {
        out << v.code;
        if (v.index >= 0) {
            out << '[' << v.index << ']';
        }
        out << ": " << v.message << '\n';
    }
    return out.str();
}

Matrix build_travel_matrix(std::span<const Point> coords) {
    const std::size_t n = coords.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(coords[i].x) || !std::isfinite(coords[i].y)) {
            throw Error(ErrorCode::InvalidInstance,
                        "non-finite coordinate at node " + std::to_string(i));
        }
    }
    Matrix t(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(coords[i].x - coords[j].x, coords[i].y - coords[j].y);
            t(i, j) = d;
            t(j, i) = d;
        }
    }
    return t;
}

void refresh_travel_matrix(InstanceData& inst) {
    if (!inst.travel_explicit) {
        inst.travel_time = build_travel_matrix(inst.coords);
    }
}

int nearest_depot(const InstanceData& inst, int node, bool admissible_only) {
    std::vector<std::uint8_t> admissible(inst.num_nodes(), admissible_only ? 0 : 1);
    if (admissible_only) {
        for (int home : inst.agent_home_depot) {
            if (home >= 0 && static_cast<std::size_t>(home) < admissible.size()) {
                admissible[home] = 1;
            }
        }
    }
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < inst.num_nodes(); ++d) {
        if (!inst.is_depot[d] || !admissible[d]) {
            continue;
        }
        const double dist = inst.time(static_cast<int>(d), node);
        if (dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(d);
        }
    }
    return best;
}

namespace {

class ReportBuilder {
public:
    void add(std::string code, int index, std::string message) {
        report_.violations.push_back({std::move(code), index, std::move(message)});
    }
    ValidationReport take() { return std::move(report_); }
    bool clean() const { return report_.ok(); }

private:
    ValidationReport report_;
};

bool sizes_consistent(const InstanceData& inst, ReportBuilder& out) {
    const std::size_t n = inst.coords.size();
    bool ok = true;
    auto check = [&](std::size_t size, const char* field) {
        if (size != n) {
            out.add("SIZE_MISMATCH", -1,
                    std::string(field) + " has " + std::to_string(size) + " entries, expected " +
                        std::to_string(n));
            ok = false;
        }
    };
    if (n == 0) {
        out.add("SIZE_MISMATCH", -1, "instance has no nodes");
        return false;
    }
    check(inst.is_depot.size(), "is_depot");
    check(inst.demand.size(), "demand");
    check(inst.profit.size(), "profit");
    check(inst.service_time.size(), "service_time");
    check(inst.tw_open.size(), "tw_open");
    check(inst.tw_close.size(), "tw_close");
    check(inst.pickup_of.size(), "pickup_of");
    if (inst.travel_time.rows() != n || inst.travel_time.cols() != n) {
        out.add("TRAVEL_SHAPE", -1, "travel_time is not n x n");
        ok = false;
    }
    return ok;
}

void check_pdptw_pairing(const InstanceData& inst, ReportBuilder& out) {
    const int n = static_cast<int>(inst.num_nodes());
    std::vector<int> matched(n, 0);
    for (int j = 0; j < n; ++j) {
        if (inst.is_depot[j]) {
            continue;
        }
        if (inst.demand[j] == 0.0) {
            out.add("PDPTW_ZERO_DEMAND", j, "PDPTW service is neither pickup nor delivery");
            continue;
        }
        if (inst.demand[j] > 0.0) {
            if (inst.pickup_of[j] != -1) {
                out.add("PAIRING_MISMATCH", j, "pickup node must have pickup_of = -1");
            }
            continue;
        }
        const int p = inst.pickup_of[j];
        if (p < 0) {
            out.add("UNPAIRED_DELIVERY", j, "delivery has no pickup");
            continue;
        }
        if (p >= n || inst.is_depot[p] || inst.demand[p] <= 0.0) {
            out.add("PAIRING_MISMATCH", j, "delivery points at a node that is not a pickup");
            continue;
        }
        ++matched[p];
        if (inst.demand[j] != -inst.demand[p]) {
            out.add("DEMAND_MISMATCH", j, "delivery demand must negate its pickup demand");
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!inst.is_depot[i] && inst.demand[i] > 0.0 && matched[i] != 1) {
            out.add(matched[i] == 0 ? "UNPAIRED_PICKUP" : "PAIRING_MISMATCH", i,
                    "pickup matched by " + std::to_string(matched[i]) + " deliveries");
        }
    }
}

} // namespace

ValidationReport validate_instance(const InstanceData& inst) {
    ReportBuilder out;
    if (!sizes_consistent(inst, out)) {
        return out.take();
    }
    const int n = static_cast<int>(inst.num_nodes());
    const Problem problem = inst.problem;

    if (!(inst.capacity > 0.0) || !std::isfinite(inst.capacity)) {
        out.add("CAPACITY_NONPOSITIVE", -1, "capacity must be a positive finite number");
    }
    if (inst.agent_home_depot.empty()) {
        out.add("NO_AGENTS", -1, "fleet is empty");
    }

    const auto depots = inst.depots();
    if (depots.empty() || (problem != Problem::MDVRPTW && depots.size() != 1)) {
        out.add("DEPOT_COUNT", -1,
                "found " + std::to_string(depots.size()) + " depots for " +
                    std::string(to_string(problem)));
    }
    for (std::size_t a = 0; a < inst.agent_home_depot.size(); ++a) {
        const int home = inst.agent_home_depot[a];
        if (home < 0 || home >= n || !inst.is_depot[home]) {
            out.add("BAD_HOME_DEPOT", static_cast<int>(a), "agent home is not a depot node");
        }
    }

    for (int i = 0; i < n; ++i) {
        const bool finite = std::isfinite(inst.coords[i].x) && std::isfinite(inst.coords[i].y) &&
                            std::isfinite(inst.demand[i]) && std::isfinite(inst.profit[i]) &&
                            std::isfinite(inst.service_time[i]) && std::isfinite(inst.tw_open[i]) &&
                            std::isfinite(inst.tw_close[i]);
        if (!finite) {
            out.add("NON_FINITE", i, "node has a non-finite field");
            continue;
        }
        if (inst.tw_open[i] > inst.tw_close[i]) {
            out.add("WINDOW_INVERTED", i, "tw_open exceeds tw_close");
        }
        if (inst.service_time[i] < 0.0) {
            out.add("SERVICE_NEGATIVE", i, "negative service time");
        }
        if (inst.profit[i] < 0.0) {
            out.add("PROFIT_NEGATIVE", i, "negative profit");
        }
        if (inst.is_depot[i]) {
            if (inst.demand[i] != 0.0 || inst.service_time[i] != 0.0) {
                out.add("DEPOT_NONZERO", i, "depots have zero demand and service time");
            }
            continue;
        }
        if (problem != Problem::PDPTW) {
            if (inst.demand[i] < 0.0) {
                out.add("DEMAND_NEGATIVE", i, "negative demand");
            } else if (uses_capacity(problem) && !is_split_delivery(problem) &&
                       inst.demand[i] > inst.capacity) {
                out.add("DEMAND_EXCEEDS_CAPACITY", i, "demand larger than vehicle capacity");
            }
            if (inst.pickup_of[i] != -1) {
                out.add("PAIRING_UNEXPECTED", i, "pickup_of is only meaningful for PDPTW");
            }
        } else if (std::abs(inst.demand[i]) > inst.capacity) {
            out.add("DEMAND_EXCEEDS_CAPACITY", i, "load larger than vehicle capacity");
        }
    }
    if (problem == Problem::PDPTW) {
        check_pdptw_pairing(inst, out);
    }

    if (has_soft_windows(problem)) {
        if (!inst.soft_params) {
            out.add("SOFT_PARAMS_MISSING", -1, "CVRPSTW requires soft window parameters");
        } else {
            const auto& sp = *inst.soft_params;
            if (sp.max_violation < 0.0 || sp.max_wait < 0.0 || sp.early_rate < 0.0 ||
                sp.late_rate < 0.0) {
                out.add("SOFT_PARAMS_INVALID", -1, "soft window parameters must be non-negative");
            }
        }
    }

    const auto& t = inst.travel_time;
    for (int i = 0; i < n; ++i) {
        if (t(i, i) != 0.0) {
            out.add("TRAVEL_DIAGONAL", i, "travel_time diagonal must be zero");
        }
        for (int j = i + 1; j < n; ++j) {
            if (!std::isfinite(t(i, j)) || t(i, j) < 0.0 ||
                std::abs(t(i, j) - t(j, i)) > kTimeTolerance) {
                out.add("TRAVEL_ASYMMETRIC", i,
                        "travel_time(" + std::to_string(i) + "," + std::to_string(j) +
                            ") is invalid or asymmetric");
            }
        }
    }
    if (!out.clean()) {
        return out.take();
    }

    // Reachability: every node that carries demand or profit can be served
    // out-and-back from its nearest admissible depot.
    for (int i = 0; i < n; ++i) {
        if (inst.is_depot[i] || (inst.demand[i] == 0.0 && inst.profit[i] <= 0.0)) {
            continue;
        }
        const int depot = nearest_depot(inst, i, true);
        if (depot < 0) {
            continue;
        }
        const double arrival = inst.depot_open(depot) + t(depot, i);
        const double start = std::max(arrival, inst.tw_open[i]);
        if (arrival > inst.tw_close[i] + kTimeTolerance) {
            out.add("NODE_UNREACHABLE", i, "window closes before the earliest arrival");
        } else if (start + inst.service_time[i] + t(i, depot) >
                   inst.depot_close(depot) + kTimeTolerance) {
            out.add("NODE_UNREACHABLE", i, "cannot return to the depot before it closes");
        }
    }
    return out.take();
}

} // namespace mavrp
