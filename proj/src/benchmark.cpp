#include "mavrp/benchmark.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(BenchmarkFormat format) {
    switch (format) {
    case BenchmarkFormat::Solomon: return "solomon";
    case BenchmarkFormat::LiLim: return "li_lim";
    case BenchmarkFormat::Cordeau: return "cordeau";
    }
    return "solomon";
}

BenchmarkFormat benchmark_format_from_string(std::string_view name) {
    for (auto f : {BenchmarkFormat::Solomon, BenchmarkFormat::LiLim, BenchmarkFormat::Cordeau}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw Error(ErrorCode::InputError, "unknown benchmark format '" + std::string(name) + "'");
}

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

class LineCursor {
public:
    explicit LineCursor(std::string_view text) {
        int number = 0;
        std::size_t pos = 0;
        while (pos < text.size() || (pos == 0 && text.empty())) {
            const auto end = std::min(text.find('\n', pos), text.size());
            ++number;
            Line line{number, {}};
            std::string token;
            for (std::size_t i = pos; i < end; ++i) {
                const char c = text[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!token.empty()) {
                        line.tokens.push_back(std::move(token));
                        token.clear();
                    }
                } else {
                    token.push_back(c);
                }
            }
            if (!token.empty()) {
                line.tokens.push_back(std::move(token));
            }
            if (!line.tokens.empty()) {
                lines_.push_back(std::move(line));
            }
            last_line_ = number;
            if (end == text.size()) {
                break;
            }
            pos = end + 1;
        }
    }

    bool done() const { return next_ >= lines_.size(); }

    const Line& peek() const {
        if (done()) {
            throw Error(ErrorCode::ParseError, "unexpected end of file", last_line_ + 1);
        }
        return lines_[next_];
    }

    const Line& next() {
        const Line& line = peek();
        ++next_;
        return line;
    }

    int end_line() const { return last_line_ + 1; }

private:
    std::vector<Line> lines_;
    std::size_t next_ = 0;
    int last_line_ = 0;
};

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::optional<double> try_number(std::string_view token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        return std::nullopt;
    }
    return value;
}

double number(const Line& line, std::size_t index) {
    const auto value = try_number(line.tokens.at(index));
    if (!value) {
        throw Error(ErrorCode::ParseError, "expected a number, found '" + line.tokens[index] + "'",
                    line.number);
    }
    return *value;
}

int integer(const Line& line, std::size_t index) {
    const double v = number(line, index);
    if (v != static_cast<double>(static_cast<long long>(v))) {
        throw Error(ErrorCode::ParseError, "expected an integer, found '" + line.tokens[index] + "'",
                    line.number);
    }
    return static_cast<int>(v);
}

bool all_numeric(const Line& line) {
    return std::all_of(line.tokens.begin(), line.tokens.end(),
                       [](const std::string& t) { return try_number(t).has_value(); });
}

void expect_keyword(const Line& line, std::string_view keyword) {
    if (upper(line.tokens.front()) != keyword) {
        throw Error(ErrorCode::ParseError,
                    "expected " + std::string(keyword) + ", found '" + line.tokens.front() + "'",
                    line.number);
    }
}

void expect_columns(const Line& line, std::size_t count) {
    if (line.tokens.size() != count) {
        throw Error(ErrorCode::ParseError,
                    "expected " + std::to_string(count) + " fields, found " +
                        std::to_string(line.tokens.size()),
                    line.number);
    }
}

struct NodeRow {
    int line = 0;
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double ready = 0.0;
    double due = 0.0;
    double service = 0.0;
    int pickup = 0;
    int delivery = 0;
};

void check_row_values(const NodeRow& row, bool allow_negative_demand) {
    if (row.demand < 0.0 && !allow_negative_demand) {
        throw Error(ErrorCode::ValidationError, "negative demand", row.line);
    }
    if (row.ready < 0.0 || row.due < 0.0) {
        throw Error(ErrorCode::ValidationError, "negative time window", row.line);
    }
    if (row.ready > row.due) {
        throw Error(ErrorCode::ValidationError, "ready time after due date", row.line);
    }
    if (row.service < 0.0) {
        throw Error(ErrorCode::ValidationError, "negative service time", row.line);
    }
}

// Rows of the Solomon / Li & Lim layout. `columns` is 7 or 9.
NodeRow read_solomon_row(const Line& line, std::size_t columns, int expected_id) {
    expect_columns(line, columns);
    NodeRow row;
    row.line = line.number;
    row.id = integer(line, 0);
    if (row.id != expected_id) {
        throw Error(ErrorCode::ParseError,
                    "expected node id " + std::to_string(expected_id) + ", found " +
                        std::to_string(row.id),
                    line.number);
    }
    row.x = number(line, 1);
    row.y = number(line, 2);
    row.demand = number(line, 3);
    row.ready = number(line, 4);
    row.due = number(line, 5);
    row.service = number(line, 6);
    if (columns == 9) {
        row.pickup = integer(line, 7);
        row.delivery = integer(line, 8);
    }
    return row;
}

InstanceData assemble(Problem problem, std::string name, const std::vector<NodeRow>& rows,
                      std::size_t num_depots, double capacity, std::vector<int> homes) {
    InstanceData inst;
    inst.name = std::move(name);
    inst.problem = problem;
    inst.capacity = capacity;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool depot = i < num_depots;
        inst.coords.push_back({r.x, r.y});
        inst.is_depot.push_back(depot ? 1 : 0);
        inst.demand.push_back(depot ? 0.0 : r.demand);
        inst.profit.push_back(0.0);
        inst.service_time.push_back(depot ? 0.0 : r.service);
        inst.tw_open.push_back(r.ready);
        inst.tw_close.push_back(r.due);
        inst.pickup_of.push_back(-1);
    }
    inst.agent_home_depot = std::move(homes);
    inst.travel_time = build_travel_matrix(inst.coords);
    return inst;
}

std::vector<NodeRow> read_rows_until_eof(LineCursor& cursor, std::size_t columns) {
    std::vector<NodeRow> rows;
    while (!cursor.done()) {
        rows.push_back(read_solomon_row(cursor.next(), columns, static_cast<int>(rows.size())));
    }
    if (rows.empty()) {
        throw Error(ErrorCode::ParseError, "no node rows", cursor.end_line());
    }
    return rows;
}

struct SolomonHeader {
    std::string name;
    int vehicles = 0;
    double capacity = 0.0;
};

SolomonHeader read_solomon_header(LineCursor& cursor) {
    SolomonHeader h;
    h.name = cursor.next().tokens.front();

    expect_keyword(cursor.next(), "VEHICLE");
    const Line& header = cursor.next();
    const auto has = [&](std::string_view word) {
        return std::any_of(header.tokens.begin(), header.tokens.end(),
                           [&](const std::string& t) { return upper(t) == word; });
    };
    if (!has("NUMBER") || !has("CAPACITY")) {
        throw Error(ErrorCode::ParseError, "expected NUMBER CAPACITY header", header.number);
    }
    const Line& fleet = cursor.next();
    expect_columns(fleet, 2);
    h.vehicles = integer(fleet, 0);
    h.capacity = number(fleet, 1);
    if (h.vehicles < 1 || !(h.capacity > 0.0)) {
        throw Error(ErrorCode::ValidationError, "fleet size and capacity must be positive",
                    fleet.number);
    }

    expect_keyword(cursor.next(), "CUSTOMER");
    const Line& columns = cursor.next();
    if (upper(columns.tokens.front()).rfind("CUST", 0) != 0) {
        throw Error(ErrorCode::ParseError, "expected customer column header", columns.number);
    }
    return h;
}

InstanceData parse_solomon(std::string_view text, const std::string& name) {
    LineCursor cursor(text);
    const auto header = read_solomon_header(cursor);
    const auto rows = read_rows_until_eof(cursor, 7);
    for (const auto& r : rows) {
        check_row_values(r, false);
    }
    return assemble(Problem::CVRPTW, name.empty() ? header.name : name, rows, 1, header.capacity,
                    std::vector<int>(static_cast<std::size_t>(header.vehicles), 0));
}

InstanceData parse_li_lim(std::string_view text, const std::string& name) {
    LineCursor cursor(text);
    std::string instance_name = name;
    int vehicles = 0;
    double capacity = 0.0;
    const Line& first = cursor.peek();
    if (first.tokens.size() == 3 && all_numeric(first)) {
        cursor.next();
        vehicles = integer(first, 0);
        capacity = number(first, 1);
        if (vehicles < 1 || !(capacity > 0.0)) {
            throw Error(ErrorCode::ValidationError, "fleet size and capacity must be positive",
                        first.number);
        }
        if (instance_name.empty()) {
            instance_name = "li_lim";
        }
    } else {
        const auto header = read_solomon_header(cursor);
        vehicles = header.vehicles;
        capacity = header.capacity;
        if (instance_name.empty()) {
            instance_name = header.name;
        }
    }
    const auto rows = read_rows_until_eof(cursor, 9);
    const int n = static_cast<int>(rows.size());
    auto inst = assemble(Problem::PDPTW, instance_name, rows, 1, capacity,
                         std::vector<int>(static_cast<std::size_t>(vehicles), 0));
    for (int i = 1; i < n; ++i) {
        const auto& r = rows[i];
        const bool is_pickup = r.pickup == 0;
        check_row_values(r, !is_pickup);
        if (is_pickup) {
            if (r.delivery <= 0 || r.delivery >= n || rows[r.delivery].pickup != i) {
                throw Error(ErrorCode::ValidationError, "pickup names an invalid delivery sibling",
                            r.line);
            }
            if (!(r.demand > 0.0)) {
                throw Error(ErrorCode::ValidationError, "pickup demand must be positive", r.line);
            }
        } else {
            if (r.pickup >= n || r.delivery != 0 || rows[r.pickup].delivery != i) {
                throw Error(ErrorCode::ValidationError, "delivery names an invalid pickup sibling",
                            r.line);
            }
            if (r.demand != -rows[r.pickup].demand) {
                throw Error(ErrorCode::ValidationError,
                            "delivery demand must be the negated pickup demand", r.line);
            }
            inst.pickup_of[i] = r.pickup;
        }
    }
    check_row_values(rows[0], false);
    return inst;
}

NodeRow read_cordeau_row(const Line& line) {
    if (line.tokens.size() < 9) {
        throw Error(ErrorCode::ParseError, "node row needs at least 9 fields", line.number);
    }
    NodeRow row;
    row.line = line.number;
    row.id = integer(line, 0);
    row.x = number(line, 1);
    row.y = number(line, 2);
    row.service = number(line, 3);
    row.demand = number(line, 4);
    const int combinations = integer(line, 6);
    if (combinations < 0 || line.tokens.size() != static_cast<std::size_t>(9 + combinations)) {
        throw Error(ErrorCode::ParseError,
                    "node row field count does not match its visit-combination count",
                    line.number);
    }
    row.ready = number(line, 7 + static_cast<std::size_t>(combinations));
    row.due = number(line, 8 + static_cast<std::size_t>(combinations));
    return row;
}

InstanceData parse_cordeau(std::string_view text, const std::string& name) {
    LineCursor cursor(text);
    const Line& header = cursor.next();
    expect_columns(header, 4);
    const int type = integer(header, 0);
    const int per_depot = integer(header, 1);
    const int customers = integer(header, 2);
    const int num_depots = integer(header, 3);
    Problem problem;
    if (type == 6) {
        problem = Problem::MDVRPTW;
    } else if (type == 4) {
        problem = Problem::CVRPTW;
    } else {
        throw Error(ErrorCode::ParseError,
                    "unsupported problem type " + std::to_string(type) +
                        " (expected 4 = VRPTW or 6 = MDVRPTW)",
                    header.number);
    }
    if (per_depot < 1 || customers < 1 || num_depots < 1) {
        throw Error(ErrorCode::ParseError, "vehicle, customer and depot counts must be positive",
                    header.number);
    }
    if (problem == Problem::CVRPTW && num_depots != 1) {
        throw Error(ErrorCode::ParseError, "VRPTW files have exactly one depot", header.number);
    }

    double capacity = 0.0;
    for (int d = 0; d < num_depots; ++d) {
        const Line& limits = cursor.next();
        expect_columns(limits, 2);
        const double q = number(limits, 1);
        if (!(q > 0.0)) {
            throw Error(ErrorCode::ValidationError, "capacity must be positive", limits.number);
        }
        if (d == 0) {
            capacity = q;
        } else if (q != capacity) {
            throw Error(ErrorCode::ValidationError, "heterogeneous capacities are not supported",
                        limits.number);
        }
    }

    std::vector<NodeRow> customer_rows;
    for (int i = 0; i < customers; ++i) {
        customer_rows.push_back(read_cordeau_row(cursor.next()));
        check_row_values(customer_rows.back(), false);
    }
    std::vector<NodeRow> rows;
    for (int d = 0; d < num_depots; ++d) {
        rows.push_back(read_cordeau_row(cursor.next()));
        check_row_values(rows.back(), false);
    }
    if (!cursor.done()) {
        throw Error(ErrorCode::ParseError, "unexpected trailing content", cursor.peek().number);
    }
    rows.insert(rows.end(), customer_rows.begin(), customer_rows.end());

    std::vector<int> homes;
    for (int d = 0; d < num_depots; ++d) {
        for (int v = 0; v < per_depot; ++v) {
            homes.push_back(d);
        }
    }
    return assemble(problem, name.empty() ? "cordeau" : name, rows,
                    static_cast<std::size_t>(num_depots), capacity, std::move(homes));
}

} // namespace

InstanceData parse_benchmark(BenchmarkFormat format, std::string_view text,
                             const std::string& name) {
    switch (format) {
    case BenchmarkFormat::Solomon: return parse_solomon(text, name);
    case BenchmarkFormat::LiLim: return parse_li_lim(text, name);
    case BenchmarkFormat::Cordeau: return parse_cordeau(text, name);
    }
    throw Error(ErrorCode::InputError, "unknown benchmark format");
}

} // namespace mavrp
