#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mavrp {

enum class Problem { CVRPTW, CVRPSTW, TOPTW, PDPTW, SDVRPTW, PCVRPTW, MDVRPTW };

inline constexpr std::array<Problem, 7> kAllProblems{
    Problem::CVRPTW, Problem::CVRPSTW, Problem::TOPTW,  Problem::PDPTW,
    Problem::SDVRPTW, Problem::PCVRPTW, Problem::MDVRPTW,
};

std::string_view to_string(Problem problem);
Problem problem_from_string(std::string_view name);

bool has_soft_windows(Problem p);
bool is_split_delivery(Problem p);
bool collects_profit(Problem p);
bool penalizes_unserved(Problem p);
bool uses_capacity(Problem p);
/// Objective direction: true when smaller objectives are better.
bool minimizes(Problem p);

/// Comparison slack for time windows and route durations.
inline constexpr double kTimeTolerance = 1e-9;
/// Comparison slack for quantities (loads, remaining demand).
inline constexpr double kQuantityTolerance = 1e-9;

using Mask = std::vector<std::uint8_t>;

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<double>& values() const noexcept { return data_; }
    std::vector<double>& values() noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Soft time-window parameters: maximum violation, maximum wait, and the
/// early/late linear penalty rates.
struct SoftParams {
    double max_violation = 0.0;
    double max_wait = 0.0;
    double early_rate = 0.0;
    double late_rate = 0.0;
    bool operator==(const SoftParams&) const = default;
};

/// Immutable problem instance. Node-indexed vectors all have num_nodes()
/// entries. Depot time windows double as the depot's operating interval
/// (start / end of the working day). PDPTW deliveries carry the negated
/// demand of their pickup, as in the Li & Lim files.
struct InstanceData {
    std::string name;
    Problem problem = Problem::CVRPTW;
    std::uint64_t seed = 0;

    std::vector<Point> coords;
    std::vector<std::uint8_t> is_depot;
    std::vector<double> demand;
    std::vector<double> profit;
    std::vector<double> service_time;
    std::vector<double> tw_open;
    std::vector<double> tw_close;
    std::vector<int> pickup_of;

    double capacity = 1.0;
    std::vector<int> agent_home_depot;
    std::optional<SoftParams> soft_params;

    /// Always populated. When travel_explicit is false it is the Euclidean
    /// matrix over coords and is not serialized.
    Matrix travel_time;
    bool travel_explicit = false;

    std::size_t num_nodes() const noexcept { return coords.size(); }
    std::size_t num_agents() const noexcept { return agent_home_depot.size(); }
    std::size_t num_services() const;
    std::vector<int> depots() const;

    double time(int from, int to) const { return travel_time(from, to); }
    double depot_open(int depot) const { return tw_open[depot]; }
    double depot_close(int depot) const { return tw_close[depot]; }
    /// Latest depot closing time; the normalization scale for time features.
    double horizon() const;

    bool is_pickup(int node) const;
    bool is_delivery(int node) const;

    bool operator==(const InstanceData&) const = default;
};

/// One stop on a route. Timestamps are filled in by the engine; callers of
/// evaluate_solution only need to set node.
struct Visit {
    int node = 0;
    double arrival = 0.0;
    double service_start = 0.0;
    double quantity = 0.0;
    bool operator==(const Visit&) const = default;
};

/// Route of one agent. The origin is the agent's home depot and is implicit;
/// the final visit is the return to that depot.
struct Route {
    int agent = 0;
    std::vector<Visit> visits;
    bool operator==(const Route&) const = default;
};

struct Violation {
    std::string code;
    int index = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(std::string_view code) const;
    std::string summary() const;
};

/// Euclidean travel-time matrix (unit speed).
Matrix build_travel_matrix(std::span<const Point> coords);

/// Fill travel_time from coords unless the instance carries an explicit matrix.
void refresh_travel_matrix(InstanceData& inst);

/// Nearest depot to node; when admissible_only, only depots that are home to
/// at least one agent are considered. Ties go to the lowest index.
int nearest_depot(const InstanceData& inst, int node, bool admissible_only);

ValidationReport validate_instance(const InstanceData& inst);

} // namespace mavrp
