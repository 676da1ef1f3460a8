// mavrp command-line tool: generate, validate, convert, rollout, bench, oracle.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mavrp/benchmark.hpp"
#include "mavrp/codec.hpp"
#include "mavrp/environment.hpp"
#include "mavrp/error.hpp"
#include "mavrp/generation.hpp"
#include "mavrp/oracle.hpp"
#include "mavrp/policies.hpp"
#include "mavrp/records.hpp"

namespace fs = std::filesystem;
using namespace mavrp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> problem_names() {
    std::vector<std::string> out;
    for (auto p : kAllProblems) {
        out.emplace_back(to_string(p));
    }
    return out;
}

fs::path data_dir() {
    if (const char* env = std::getenv("MAVRP_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "data";
}

// "toy:<PROBLEM>", an instance file, or a directory (manifest order when a
// manifest is present, otherwise sorted *.json files).
std::vector<std::shared_ptr<const InstanceData>> load_instances(const std::string& source) {
    std::vector<std::shared_ptr<const InstanceData>> out;
    if (source.rfind("toy:", 0) == 0) {
        out.push_back(std::make_shared<InstanceData>(
            generate_toy(problem_from_string(source.substr(4)))));
        return out;
    }
    const fs::path path(source);
    if (!fs::is_directory(path)) {
        out.push_back(std::make_shared<InstanceData>(load_instance(path)));
        return out;
    }
    std::vector<fs::path> files;
    if (fs::exists(path / "manifest.json")) {
        for (const auto& f : decode_manifest(read_text_file(path / "manifest.json")).files) {
            files.push_back(path / f);
        }
    } else {
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    }
    for (const auto& f : files) {
        out.push_back(std::make_shared<InstanceData>(load_instance(f)));
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw Error(ErrorCode::InputError, "cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    std::string problem = "CVRPTW";
    int size = 50;
    std::optional<int> agents;
    std::optional<int> depots;
    std::optional<double> capacity;
    std::string spec_file;
    std::string split = "validation";
    std::size_t count = 10;
    std::uint64_t offset = 0;
    std::string seed_range;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    GenerationSpec spec;
    if (!a.spec_file.empty()) {
        spec = decode_generation_spec(read_text_file(a.spec_file));
    } else {
        spec = default_generation_spec(problem_from_string(a.problem), a.size);
    }
    if (a.agents) spec.num_agents = *a.agents;
    if (a.depots) spec.num_depots = *a.depots;
    if (a.capacity) spec.capacity = *a.capacity;
    spec.validate();

    const Split split = split_from_string(a.split);
    InstanceSet set;
    if (!a.seed_range.empty()) {
        const auto colon = a.seed_range.find(':');
        if (colon == std::string::npos) {
            throw Error(ErrorCode::InputError, "--seed-range expects FIRST:LAST (LAST exclusive)");
        }
        const auto first = std::stoull(a.seed_range.substr(0, colon));
        const auto last = std::stoull(a.seed_range.substr(colon + 1));
        if (last <= first) {
            throw Error(ErrorCode::InputError, "--seed-range is empty");
        }
        set.split = split;
        set.spec = spec;
        for (auto s = first; s < last; ++s) {
            set.seeds.push_back(s);
        }
        set.validate();
    } else {
        set = make_instance_set(split, spec, a.count, a.offset);
    }

    const fs::path dir = a.out.empty() ? data_dir() / (std::string(to_string(spec.problem)) + "_" +
                                                       std::to_string(spec.num_services) + "_" +
                                                       std::string(to_string(split)))
                                       : fs::path(a.out);
    fs::create_directories(dir);
    Manifest manifest{set, {}};
    for (auto seed : set.seeds) {
        const auto name = instance_file_name(spec, seed);
        save_instance(dir / name, generate_random(spec, seed));
        manifest.files.push_back(name);
    }
    write_text_file(dir / "manifest.json", encode_manifest(manifest));
    std::cout << nlohmann::json{{"record", "generate"},
                                {"dir", dir.string()},
                                {"instances", manifest.files.size()}}
                     .dump()
              << "\n";
    return kExitOk;
}

// ---- validate / convert ----------------------------------------------------

int run_validate(const std::string& in, const std::string& format) {
    InstanceData inst;
    try {
        inst = format.empty() ? load_instance(in)
                              : parse_benchmark(benchmark_format_from_string(format),
                                                read_text_file(in), fs::path(in).stem().string());
    } catch (const Error& e) {
        std::cout << nlohmann::json{{"record", "validate"}, {"ok", false}, {"error", e.what()}}.dump()
                  << "\n";
        return kExitFailure;
    }
    const auto report = validate_instance(inst);
    auto violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"code", v.code}, {"index", v.index}, {"message", v.message}});
    }
    std::cout << nlohmann::json{{"record", "validate"},
                                {"instance", inst.name},
                                {"ok", report.ok()},
                                {"violations", violations}}
                     .dump()
              << "\n";
    return report.ok() ? kExitOk : kExitFailure;
}

int run_convert(const std::string& format, const std::string& in, const std::string& out) {
    const auto inst = parse_benchmark(benchmark_format_from_string(format), read_text_file(in),
                                      fs::path(in).stem().string());
    save_instance(out, inst);
    return kExitOk;
}

// ---- rollout ---------------------------------------------------------------

struct RolloutArgs {
    std::string instances;
    std::string policy = "greedy_nearest";
    std::string selector = "round_robin";
    std::string reward = "dense";
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    bool routes = false;
    bool allow_mixed_sizes = false;
    std::string out;
};

int run_rollout(const RolloutArgs& a) {
    const auto instances = load_instances(a.instances);
    if (instances.empty()) {
        throw Error(ErrorCode::InputError, "no instances in " + a.instances);
    }
    EnvConfig config;
    config.selector = selector_from_string(a.selector);
    config.reward_mode = reward_mode_from_string(a.reward);
    std::vector<std::uint64_t> seeds;
    if (a.seed) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            seeds.push_back(mix_seed(*a.seed, i));
        }
    }
    BatchOptions options;
    options.jobs = a.jobs;
    options.allow_mixed_sizes = a.allow_mixed_sizes;
    const auto results = batch_rollout(instances, make_policy(a.policy), config, seeds, options);

    Output out(a.out);
    std::vector<EpisodeStats> finished;
    bool failed = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].stats) {
            out.stream() << episode_record(*results[i].stats, a.routes) << "\n";
            finished.push_back(*results[i].stats);
        } else {
            out.stream() << error_record(instances[i]->name, results[i].error) << "\n";
            failed = true;
        }
    }
    out.stream() << summary_record(aggregate_stats(finished), instances.front()->problem,
                                   static_cast<int>(instances.front()->num_services()), a.policy,
                                   a.selector)
                 << "\n";
    return failed ? kExitFailure : kExitOk;
}

// ---- bench -----------------------------------------------------------------

// Score rows are JSON lines with "problem", optional "size", optional
// "method"/"policy" and "selector", and a score in "score" or "av_obj".
struct ScoreRow {
    std::string problem;
    int size = 0;
    std::string method;
    std::string selector;
    double score = 0.0;
};

std::vector<ScoreRow> read_scores(const std::string& path) {
    std::istringstream lines(read_text_file(path));
    std::vector<ScoreRow> rows;
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            if (j.value("record", std::string("summary")) != "summary" &&
                !j.contains("score")) {
                continue;
            }
            ScoreRow row;
            row.problem = j.at("problem").get<std::string>();
            row.size = j.value("size", 0);
            row.method = j.value("method", j.value("policy", std::string()));
            row.selector = j.value("selector", std::string());
            row.score = j.contains("score") ? j.at("score").get<double>()
                                            : j.at("av_obj").get<double>();
            rows.push_back(std::move(row));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, path + ": " + e.what(), number);
        }
    }
    return rows;
}

int run_bench(const std::string& results_path, const std::string& ref_path) {
    const auto results = read_scores(results_path);
    std::map<std::pair<std::string, int>, double> refs;
    for (const auto& r : read_scores(ref_path)) {
        refs[{r.problem, r.size}] = r.score;
    }
    for (const auto& r : results) {
        nlohmann::json j = {{"record", "gap"},      {"problem", r.problem},
                            {"size", r.size},       {"method", r.method},
                            {"selector", r.selector}, {"model", r.score}};
        const auto it = refs.find({r.problem, r.size});
        if (it == refs.end() || it->second == 0.0) {
            j["ref"] = nullptr;
            j["gap"] = "n/a";
        } else {
            j["ref"] = it->second;
            j["gap"] = gap(r.score, it->second);
        }
        std::cout << j.dump() << "\n";
    }
    return kExitOk;
}

// ---- oracle ----------------------------------------------------------------

int run_oracle(const std::string& in, const std::string& selector, int max_depth) {
    const auto instances = load_instances(in);
    OracleOptions options;
    options.selector = selector_from_string(selector);
    options.max_depth = max_depth;
    for (const auto& inst : instances) {
        std::cout << oracle_record(*inst, brute_force_optimum(*inst, options)) << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent vehicle routing environments"};
    app.require_subcommand(1);

    const auto problems = problem_names();
    const std::vector<std::string> selectors{"round_robin", "smallest_time", "random"};
    std::vector<std::string> policies;
    for (auto p : policy_names()) {
        policies.emplace_back(p);
    }

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a seeded instance set and manifest");
    generate->add_option("--problem", gen.problem)->check(CLI::IsMember(problems));
    generate->add_option("--size", gen.size, "Number of services")->check(CLI::PositiveNumber);
    generate->add_option("--agents", gen.agents);
    generate->add_option("--depots", gen.depots);
    generate->add_option("--capacity", gen.capacity);
    generate->add_option("--spec", gen.spec_file, "Generation spec JSON (overrides --problem/--size)")
        ->check(CLI::ExistingFile);
    generate->add_option("--split", gen.split)
        ->check(CLI::IsMember({"train", "validation", "test"}));
    generate->add_option("--count", gen.count);
    generate->add_option("--offset", gen.offset);
    generate->add_option("--seed-range", gen.seed_range, "FIRST:LAST, LAST exclusive");
    generate->add_option("--out", gen.out, "Output directory (default $MAVRP_DATA_DIR/<set>)");

    std::string validate_in, validate_format;
    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("--in", validate_in)->required();
    validate->add_option("--format", validate_format, "Parse a benchmark file instead")
        ->check(CLI::IsMember({"solomon", "li_lim", "cordeau"}));

    std::string convert_format, convert_in, convert_out;
    auto* convert = app.add_subcommand("convert", "Benchmark file to native JSON");
    convert->add_option("--format", convert_format)
        ->required()
        ->check(CLI::IsMember({"solomon", "li_lim", "cordeau"}));
    convert->add_option("--in", convert_in)->required()->check(CLI::ExistingFile);
    convert->add_option("--out", convert_out)->required();

    RolloutArgs roll;
    auto* rollout = app.add_subcommand("rollout", "Run a policy over instances");
    rollout->add_option("--instances", roll.instances, "Directory, file or toy:<PROBLEM>")
        ->required();
    rollout->add_option("--policy", roll.policy)->check(CLI::IsMember(policies));
    rollout->add_option("--selector", roll.selector)->check(CLI::IsMember(selectors));
    rollout->add_option("--reward", roll.reward)->check(CLI::IsMember({"dense", "sparse"}));
    rollout->add_option("--seed", roll.seed, "Episode seed base (default: instance seeds)");
    rollout->add_option("--jobs", roll.jobs)->check(CLI::PositiveNumber);
    rollout->add_flag("--routes", roll.routes, "Include routes in episode records");
    rollout->add_flag("--allow-mixed-sizes", roll.allow_mixed_sizes);
    rollout->add_option("--out", roll.out, "Results file (default stdout)");

    std::string bench_results, bench_ref;
    auto* bench = app.add_subcommand("bench", "Gap table of model scores against references");
    bench->add_option("--results", bench_results)->required()->check(CLI::ExistingFile);
    bench->add_option("--ref", bench_ref)->required()->check(CLI::ExistingFile);

    std::string oracle_in, oracle_selector = "round_robin";
    int oracle_depth = 0;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
    oracle->add_option("--in", oracle_in, "File, directory or toy:<PROBLEM>")->required();
    oracle->add_option("--selector", oracle_selector)
        ->check(CLI::IsMember({"round_robin", "smallest_time"}));
    oracle->add_option("--max-depth", oracle_depth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*validate) return run_validate(validate_in, validate_format);
        if (*convert) return run_convert(convert_format, convert_in, convert_out);
        if (*rollout) return run_rollout(roll);
        if (*bench) return run_bench(bench_results, bench_ref);
        if (*oracle) return run_oracle(oracle_in, oracle_selector, oracle_depth);
    } catch (const Error& e) {
        std::cerr << "mavrp: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "mavrp: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
