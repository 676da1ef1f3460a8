#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mavrp/benchmark.hpp"
#include "mavrp/codec.hpp"
#include "mavrp/environment.hpp"
#include "mavrp/error.hpp"
#include "mavrp/evaluate.hpp"
#include "mavrp/generation.hpp"
#include "mavrp/oracle.hpp"
#include "mavrp/policies.hpp"

namespace py = pybind11;
using namespace mavrp;

namespace {

// pybind11 holders cannot be const; instances are never mutated from Python.
using InstancePtr = std::shared_ptr<InstanceData>;

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<bool> to_array(const Mask& m) {
    py::array_t<bool> out(m.size());
    auto* data = out.mutable_data();
    for (std::size_t i = 0; i < m.size(); ++i) {
        data[i] = m[i] != 0;
    }
    return out;
}

py::dict bundle_dict(const ObservationBundle& b) {
    py::dict d;
    d["agent"] = b.agent;
    d["nodes_static"] = to_array(b.nodes_static);
    d["nodes_dynamic"] = to_array(b.nodes_dynamic);
    d["agent_features"] = to_array(b.agent_features);
    d["other_agents"] = to_array(b.other_agents);
    d["global"] = to_array(b.global);
    d["action_mask"] = to_array(b.action_mask);
    d["agents_mask"] = to_array(b.agents_mask);
    return d;
}

py::list routes_list(const std::vector<Route>& routes) {
    py::list out;
    for (const auto& r : routes) {
        std::vector<int> nodes;
        for (const auto& v : r.visits) {
            nodes.push_back(v.node);
        }
        out.append(nodes);
    }
    return out;
}

py::dict stats_dict(const EpisodeStats& s) {
    py::dict d;
    d["instance"] = s.instance;
    d["problem"] = std::string(to_string(s.problem));
    d["seed"] = s.seed;
    d["objective"] = s.objective;
    d["total_reward"] = s.total_reward;
    d["total_penalty"] = s.total_penalty;
    d["total_distance"] = s.total_distance;
    d["agents_used"] = s.agents_used;
    d["services_served"] = s.services_served;
    d["num_services"] = s.num_services;
    d["demand_served_fraction"] = s.demand_served_fraction;
    d["profit_collected_fraction"] = s.profit_collected_fraction;
    d["steps"] = s.steps;
    d["routes"] = routes_list(s.routes);
    return d;
}

std::vector<Route> routes_from(const std::vector<std::vector<int>>& nodes) {
    std::vector<Route> routes;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        Route r{static_cast<int>(a), {}};
        for (int n : nodes[a]) {
            r.visits.push_back({n});
        }
        routes.push_back(std::move(r));
    }
    return routes;
}

EnvConfig make_config(const std::string& selector, const std::string& reward, bool compute) {
    EnvConfig c;
    c.selector = selector_from_string(selector);
    c.reward_mode = reward_mode_from_string(reward);
    c.compute_observations = compute;
    return c;
}

// Observation configs are problem dependent, so the JSON is decoded on reset.
class PyEnv {
public:
    PyEnv(const std::string& selector, const std::string& reward,
          std::optional<std::string> observations, bool compute)
        : config_(make_config(selector, reward, compute)),
          observations_(std::move(observations)), env_(config_) {}

    py::dict reset(InstancePtr inst, std::uint64_t seed) {
        if (observations_ && inst) {
            auto config = config_;
            config.observations = decode_observation_config(*observations_, inst->problem);
            env_ = Environment(config);
        }
        return bundle_dict(env_.reset(std::move(inst), seed));
    }

    py::tuple step(int action) {
        const auto out = env_.step(action);
        py::dict info;
        info["agent"] = out.agent;
        info["next_agent"] = out.next_agent;
        if (out.stats) {
            info["stats"] = stats_dict(*out.stats);
        }
        return py::make_tuple(out.reward, out.penalty, out.done, info);
    }

    Environment& env() { return env_; }

private:
    EnvConfig config_;
    std::optional<std::string> observations_;
    Environment env_;
};

} // namespace

PYBIND11_MODULE(_mavrp, m) {
    m.doc() = "Multi-agent vehicle routing environments";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&] { return py::object(py::exception<Error>(m, "MavrpError")); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto& cls = error_type.get_stored();
            py::object exc = cls(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("line") = e.line();
            PyErr_SetObject(cls.ptr(), exc.ptr());
        }
    });

    std::vector<std::string> problems;
    for (auto p : kAllProblems) {
        problems.emplace_back(to_string(p));
    }
    m.attr("PROBLEMS") = problems;

    py::class_<InstanceData, InstancePtr>(m, "Instance")
        .def_static("from_json",
                    [](const std::string& text) {
                        return std::make_shared<InstanceData>(decode_instance(text));
                    })
        .def_static("load",
                    [](const std::string& path) {
                        return std::make_shared<InstanceData>(load_instance(path));
                    })
        .def_static(
            "parse",
            [](const std::string& format, const std::string& text, const std::string& name) {
                return std::make_shared<InstanceData>(
                    parse_benchmark(benchmark_format_from_string(format), text, name));
            },
            py::arg("format"), py::arg("text"), py::arg("name") = "")
        .def_static("toy",
                    [](const std::string& problem) {
                        return std::make_shared<InstanceData>(
                            generate_toy(problem_from_string(problem)));
                    })
        .def_static(
            "generate",
            [](const std::string& problem, int size, std::uint64_t seed, std::optional<int> agents,
               std::optional<int> depots) {
                auto spec = default_generation_spec(problem_from_string(problem), size);
                if (agents) spec.num_agents = *agents;
                if (depots) spec.num_depots = *depots;
                spec.validate();
                return std::make_shared<InstanceData>(generate_random(spec, seed));
            },
            py::arg("problem"), py::arg("size"), py::arg("seed"), py::arg("agents") = py::none(),
            py::arg("depots") = py::none())
        .def("to_json", [](const InstanceData& i) { return encode_instance(i); })
        .def("augment",
             [](const InstanceData& i, int t) {
                 return std::make_shared<InstanceData>(augment_instance(i, t));
             })
        .def("validate",
             [](const InstanceData& i) {
                 std::vector<py::tuple> out;
                 for (const auto& v : validate_instance(i).violations) {
                     out.push_back(py::make_tuple(v.code, v.index, v.message));
                 }
                 return out;
             })
        .def_readonly("name", &InstanceData::name)
        .def_property_readonly("problem",
                               [](const InstanceData& i) { return std::string(to_string(i.problem)); })
        .def_readonly("seed", &InstanceData::seed)
        .def_readonly("capacity", &InstanceData::capacity)
        .def_property_readonly("num_nodes", &InstanceData::num_nodes)
        .def_property_readonly("num_agents", &InstanceData::num_agents)
        .def_property_readonly("num_services", &InstanceData::num_services)
        .def_property_readonly("coords",
                               [](const InstanceData& i) {
                                   Matrix c(i.num_nodes(), 2);
                                   for (std::size_t k = 0; k < i.num_nodes(); ++k) {
                                       c(k, 0) = i.coords[k].x;
                                       c(k, 1) = i.coords[k].y;
                                   }
                                   return to_array(c);
                               })
        .def_property_readonly("travel_time",
                               [](const InstanceData& i) { return to_array(i.travel_time); })
        .def("__eq__", [](const InstanceData& a, const InstanceData& b) { return a == b; })
        .def("__repr__", [](const InstanceData& i) {
            return "<Instance " + i.name + " " + std::string(to_string(i.problem)) + " nodes=" +
                   std::to_string(i.num_nodes()) + ">";
        });

    py::class_<PyEnv>(m, "Env")
        .def(py::init<const std::string&, const std::string&, std::optional<std::string>, bool>(),
             py::arg("selector") = "round_robin", py::arg("reward") = "dense",
             py::arg("observations") = py::none(), py::arg("compute_observations") = true)
        .def("reset", &PyEnv::reset, py::arg("instance"), py::arg("seed") = 0)
        .def("step", &PyEnv::step, py::arg("action"))
        .def("observe", [](PyEnv& e) { return bundle_dict(e.env().observe()); })
        .def("action_mask", [](PyEnv& e) { return to_array(e.env().feasible_actions()); })
        .def("sample_action", [](PyEnv& e) { return e.env().sample_action(); })
        .def("stats", [](PyEnv& e) { return stats_dict(e.env().stats_report()); })
        .def_property_readonly("done", [](PyEnv& e) { return e.env().done(); })
        .def_property_readonly("active_agent",
                               [](PyEnv& e) { return e.env().state().active_agent; });

    m.def("policy_names", [] {
        std::vector<std::string> out;
        for (auto n : policy_names()) out.emplace_back(n);
        return out;
    });

    m.def(
        "rollout",
        [](const std::vector<InstancePtr>& instances, const std::string& policy,
           const std::string& selector, const std::string& reward, int jobs,
           std::vector<std::uint64_t> seeds) {
            const std::vector<std::shared_ptr<const InstanceData>> batch(instances.begin(),
                                                                         instances.end());
            BatchOptions options;
            options.jobs = jobs;
            const auto config = make_config(selector, reward, false);
            const auto chooser = make_policy(policy);
            std::vector<RolloutResult> results;
            {
                py::gil_scoped_release release;
                results = batch_rollout(batch, chooser, config, seeds, options);
            }
            py::list out;
            for (const auto& r : results) {
                if (r.stats) {
                    out.append(stats_dict(*r.stats));
                } else {
                    py::dict d;
                    d["error"] = r.error;
                    out.append(d);
                }
            }
            return out;
        },
        py::arg("instances"), py::arg("policy") = "greedy_nearest",
        py::arg("selector") = "round_robin", py::arg("reward") = "dense", py::arg("jobs") = 1,
        py::arg("seeds") = std::vector<std::uint64_t>{});

    m.def(
        "oracle",
        [](const InstanceData& inst, const std::string& selector, int max_depth) {
            OracleOptions options;
            options.selector = selector_from_string(selector);
            options.max_depth = max_depth;
            const auto r = brute_force_optimum(inst, options);
            py::dict d;
            d["objective"] = r.objective;
            d["penalty"] = r.penalty;
            d["total"] = r.total();
            d["actions"] = r.actions;
            d["routes"] = routes_list(r.routes);
            d["states_explored"] = r.states_explored;
            return d;
        },
        py::arg("instance"), py::arg("selector") = "round_robin", py::arg("max_depth") = 0);

    m.def(
        "evaluate",
        [](const InstanceData& inst, const std::vector<std::vector<int>>& routes,
           const std::string& selector) {
            EvaluateOptions options;
            options.selector = selector_from_string(selector);
            const auto e = evaluate_solution(inst, routes_from(routes), options);
            py::dict d;
            d["objective"] = e.objective;
            d["penalty"] = e.penalty;
            d["feasible"] = e.feasible;
            std::vector<py::tuple> violations;
            for (const auto& v : e.violations) {
                violations.push_back(py::make_tuple(v.code, v.index, v.message));
            }
            d["violations"] = violations;
            return d;
        },
        py::arg("instance"), py::arg("routes"), py::arg("selector") = "round_robin");

    m.def("gap", &gap, py::arg("model"), py::arg("ref"));
}
