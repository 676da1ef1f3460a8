#include "mavrp/codec.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mavrp/error.hpp"

namespace mavrp {

using json = nlohmann::json;

namespace {

constexpr std::string_view kInstanceSchema = "mavrp/instance";
constexpr std::string_view kManifestSchema = "mavrp/manifest";

json soft_to_json(const std::optional<SoftParams>& sp) {
    if (!sp) {
        return nullptr;
    }
    return {{"max_violation", sp->max_violation},
            {"max_wait", sp->max_wait},
            {"early_rate", sp->early_rate},
            {"late_rate", sp->late_rate}};
}

std::optional<SoftParams> soft_from_json(const json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return SoftParams{j.at("max_violation").get<double>(), j.at("max_wait").get<double>(),
                      j.at("early_rate").get<double>(), j.at("late_rate").get<double>()};
}

json spec_to_json(const GenerationSpec& spec) {
    return {{"problem", to_string(spec.problem)},
            {"num_services", spec.num_services},
            {"num_agents", spec.num_agents},
            {"num_depots", spec.num_depots},
            {"capacity", spec.capacity},
            {"horizon", spec.horizon},
            {"tw_width_range", {spec.tw_width_range.first, spec.tw_width_range.second}},
            {"service_time", spec.service_time},
            {"demand_range", {spec.demand_range.first, spec.demand_range.second}},
            {"profit_mode", to_string(spec.profit_mode)},
            {"profit_range", {spec.profit_range.first, spec.profit_range.second}},
            {"soft_params", soft_to_json(spec.soft_params)}};
}

GenerationSpec spec_from_json(const json& j) {
    GenerationSpec spec;
    spec.problem = problem_from_string(j.at("problem").get<std::string>());
    spec.num_services = j.at("num_services").get<int>();
    spec.num_agents = j.at("num_agents").get<int>();
    spec.num_depots = j.at("num_depots").get<int>();
    spec.capacity = j.at("capacity").get<double>();
    spec.horizon = j.at("horizon").get<double>();
    spec.tw_width_range = j.at("tw_width_range").get<std::pair<double, double>>();
    spec.service_time = j.at("service_time").get<double>();
    spec.demand_range = j.at("demand_range").get<std::pair<int, int>>();
    spec.profit_mode = profit_mode_from_string(j.at("profit_mode").get<std::string>());
    spec.profit_range = j.at("profit_range").get<std::pair<int, int>>();
    spec.soft_params = soft_from_json(j.at("soft_params"));
    return spec;
}

void check_schema(const json& doc, std::string_view schema, int version) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::DecodeError, "document is not a JSON object");
    }
    if (doc.at("schema").get<std::string>() != schema) {
        throw Error(ErrorCode::DecodeError, "expected schema " + std::string(schema));
    }
    const int found = doc.at("version").get<int>();
    if (found != version) {
        throw Error(ErrorCode::DecodeError, "schema version " + std::to_string(found) +
                                                " is not supported (expected " +
                                                std::to_string(version) + ")");
    }
}

// Converts library/JSON failures raised while decoding into DECODE_ERROR.
template <typename Fn>
auto decoding(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DecodeError) {
            throw;
        }
        throw Error(ErrorCode::DecodeError, e.what());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::DecodeError, e.what());
    }
}

} // namespace

std::string encode_instance(const InstanceData& inst) {
    json coords = json::array();
    for (const auto& p : inst.coords) {
        coords.push_back({p.x, p.y});
    }
    json travel = nullptr;
    if (inst.travel_explicit) {
        travel = json::array();
        for (std::size_t i = 0; i < inst.travel_time.rows(); ++i) {
            const auto row = inst.travel_time.row(i);
            travel.push_back(std::vector<double>(row.begin(), row.end()));
        }
    }
    json doc = {{"schema", kInstanceSchema},
                {"version", kInstanceSchemaVersion},
                {"name", inst.name},
                {"problem", to_string(inst.problem)},
                {"seed", inst.seed},
                {"capacity", inst.capacity},
                {"coords", std::move(coords)},
                {"is_depot", inst.is_depot},
                {"demand", inst.demand},
                {"profit", inst.profit},
                {"service_time", inst.service_time},
                {"tw_open", inst.tw_open},
                {"tw_close", inst.tw_close},
                {"pickup_of", inst.pickup_of},
                {"agent_home_depot", inst.agent_home_depot},
                {"soft_params", soft_to_json(inst.soft_params)},
                {"travel_time", std::move(travel)}};
    return doc.dump(1) + "\n";
}

InstanceData decode_instance(std::string_view text) {
    return decoding([&] {
        const json doc = json::parse(text);
        check_schema(doc, kInstanceSchema, kInstanceSchemaVersion);
        InstanceData inst;
        inst.name = doc.at("name").get<std::string>();
        inst.problem = problem_from_string(doc.at("problem").get<std::string>());
        inst.seed = doc.at("seed").get<std::uint64_t>();
        inst.capacity = doc.at("capacity").get<double>();
        for (const auto& p : doc.at("coords")) {
            if (!p.is_array() || p.size() != 2) {
                throw Error(ErrorCode::DecodeError, "coordinate entries must be [x, y] pairs");
            }
            inst.coords.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        inst.is_depot = doc.at("is_depot").get<std::vector<std::uint8_t>>();
        inst.demand = doc.at("demand").get<std::vector<double>>();
        inst.profit = doc.at("profit").get<std::vector<double>>();
        inst.service_time = doc.at("service_time").get<std::vector<double>>();
        inst.tw_open = doc.at("tw_open").get<std::vector<double>>();
        inst.tw_close = doc.at("tw_close").get<std::vector<double>>();
        inst.pickup_of = doc.at("pickup_of").get<std::vector<int>>();
        inst.agent_home_depot = doc.at("agent_home_depot").get<std::vector<int>>();
        inst.soft_params = soft_from_json(doc.at("soft_params"));

        const std::size_t n = inst.coords.size();
        const auto& travel = doc.at("travel_time");
        if (travel.is_null()) {
            inst.travel_explicit = false;
            inst.travel_time = build_travel_matrix(inst.coords);
        } else {
            inst.travel_explicit = true;
            if (travel.size() != n) {
                throw Error(ErrorCode::DecodeError, "travel_time must have one row per node");
            }
            inst.travel_time = Matrix(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto row = travel[i].get<std::vector<double>>();
                if (row.size() != n) {
                    throw Error(ErrorCode::DecodeError, "travel_time rows must have n entries");
                }
                std::copy(row.begin(), row.end(), inst.travel_time.row(i).begin());
            }
        }
        return inst;
    });
}

std::string encode_generation_spec(const GenerationSpec& spec) { return spec_to_json(spec).dump(); }

GenerationSpec decode_generation_spec(std::string_view text) {
    return decoding([&] { return spec_from_json(json::parse(text)); });
}

std::string encode_manifest(const Manifest& manifest) {
    json doc = {{"schema", kManifestSchema},
                {"version", kManifestSchemaVersion},
                {"split", to_string(manifest.set.split)},
                {"spec", spec_to_json(manifest.set.spec)},
                {"seeds", manifest.set.seeds},
                {"files", manifest.files}};
    return doc.dump(1) + "\n";
}

Manifest decode_manifest(std::string_view text) {
    return decoding([&] {
        const json doc = json::parse(text);
        check_schema(doc, kManifestSchema, kManifestSchemaVersion);
        Manifest m;
        m.set.split = split_from_string(doc.at("split").get<std::string>());
        m.set.spec = spec_from_json(doc.at("spec"));
        m.set.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
        m.files = doc.at("files").get<std::vector<std::string>>();
        if (m.files.size() != m.set.seeds.size()) {
            throw Error(ErrorCode::DecodeError, "manifest lists a different number of files and seeds");
        }
        return m;
    });
}

std::string instance_file_name(const GenerationSpec& spec, std::uint64_t seed) {
    return std::string(to_string(spec.problem)) + "_" + std::to_string(spec.num_services) + "_" +
           std::to_string(seed) + ".json";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::InputError, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::InputError, "cannot write " + path.string());
    }
    out << text;
}

InstanceData load_instance(const std::filesystem::path& path) {
    return decode_instance(read_text_file(path));
}

void save_instance(const std::filesystem::path& path, const InstanceData& inst) {
    write_text_file(path, encode_instance(inst));
}

} // namespace mavrp
