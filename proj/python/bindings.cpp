#include "synchpack/algorithms.hpp"
#include "synchpack/greedy.hpp"
#include "synchpack/io.hpp"
#include "synchpack/model.hpp"
#include "synchpack/online.hpp"
#include "synchpack/oracle.hpp"
#include "synchpack/synchpack.hpp"
#include "synchpack/workload.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace synchpack;

namespace {

Instance parse_instance(const std::string& text) { return instance_from_json(Json::parse(text)); }

std::string solve(const std::string& instance_json, const std::string& algorithm, const std::string& epsilon,
                  std::optional<std::uint64_t> seed, const std::string& alpha, bool compact) {
  Instance instance = parse_instance(instance_json);
  AlgoOptions options;
  options.epsilon = parse_rational(epsilon);
  options.seed = seed;
  options.remote_penalty = parse_rational(alpha);
  options.compact = compact;
  AlgoResult result = run_algorithm(algorithm, instance, options);
  Json doc;
  doc["stats"] = stats_to_json(result.stats);
  doc["schedule"] = schedule_to_json(result.schedule);
  doc["valid"] = validate_schedule(instance, result.schedule).ok();
  return doc.dump();
}

std::string validate(const std::string& instance_json, const std::string& schedule_json) {
  Instance instance = parse_instance(instance_json);
  Schedule schedule = schedule_from_json(Json::parse(schedule_json));
  ValidationReport report = validate_schedule(instance, schedule);
  Json doc = report_to_json(report);
  if (report.ok()) doc["objective"] = to_string(schedule_objective(instance, schedule));
  return doc.dump();
}

std::string bound(const std::string& instance_json, const std::string& relaxation, const std::string& epsilon) {
  return to_string(lower_bound(parse_instance(instance_json), parse_relaxation(relaxation), parse_rational(epsilon)));
}

std::string optimum(const std::string& instance_json, const std::string& mode, std::int64_t horizon) {
  OptResult r = brute_force_opt(parse_instance(instance_json), parse_schedule_mode(mode), horizon);
  Json doc;
  doc["objective"] = to_string(r.objective);
  doc["schedule"] = schedule_to_json(r.schedule);
  return doc.dump();
}

std::string online(const std::string& instance_json, const std::string& algorithm, bool preemptive,
                   const std::string& tau0, const std::string& gamma, const std::string& beta) {
  OnlineConfig config;
  config.algorithm = algorithm;
  config.preemptive = preemptive;
  config.tau0 = parse_rational(tau0);
  config.gamma = parse_rational(gamma);
  config.beta = parse_rational(beta);
  OnlineResult r = run_online(parse_instance(instance_json), config);
  Json doc;
  doc["schedule"] = schedule_to_json(r.schedule);
  doc["delays"] = Json::array();
  for (const Rational& d : r.delays) doc["delays"].push_back(to_string(d));
  doc["boundaries"] = Json::array();
  for (const Rational& b : r.boundaries) doc["boundaries"].push_back(to_string(b));
  doc["weighted_average_delay"] = to_string(r.weighted_average_delay);
  return doc.dump();
}

std::string synth(int jobs, int min_tasks, int max_tasks, int machines, std::int64_t min_proc, std::int64_t max_proc,
                  int placement, bool distinct_machines, std::int64_t arrival_span, const std::string& weights,
                  std::uint64_t seed) {
  SynthParams p;
  p.n_jobs = jobs;
  p.min_tasks = min_tasks;
  p.max_tasks = max_tasks;
  p.machines = machines;
  p.min_proc = min_proc;
  p.max_proc = max_proc;
  p.placement_size = placement;
  p.distinct_machines = distinct_machines;
  p.arrival_span = arrival_span;
  p.weights = parse_weight_mode(weights);
  p.seed = seed;
  return instance_to_json(synth_instance(p)).dump();
}

std::vector<std::string> pack(const std::vector<std::pair<std::string, std::string>>& items,
                              const std::string& capacity, const std::string& start) {
  std::vector<PackItem> parsed;
  for (const auto& [size, duration] : items) parsed.push_back({parse_rational(size), parse_rational(duration)});
  std::vector<std::string> out;
  for (const Rational& s : greedy_pack_interval(parsed, parse_rational(capacity), parse_rational(start)))
    out.push_back(to_string(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_synchpack, m) {
  m.doc() = "Scheduling of synchronized multi-task jobs with packing constraints";

  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def("algorithm_names", &algorithm_names);
  m.def("solve", &solve, py::arg("instance"), py::arg("algorithm"), py::arg("epsilon") = "1/2",
        py::arg("seed") = py::none(), py::arg("alpha") = "2", py::arg("compact") = true);
  m.def("validate", &validate, py::arg("instance"), py::arg("schedule"));
  m.def("lower_bound", &bound, py::arg("instance"), py::arg("relaxation"), py::arg("epsilon") = "1/2");
  m.def("optimum", &optimum, py::arg("instance"), py::arg("mode"), py::arg("horizon") = 10);
  m.def("run_online", &online, py::arg("instance"), py::arg("algorithm") = "sp3", py::arg("preemptive") = true,
        py::arg("tau0") = "300", py::arg("gamma") = "0", py::arg("beta") = "0");
  m.def("synth_instance", &synth, py::arg("jobs") = 10, py::arg("min_tasks") = 1, py::arg("max_tasks") = 5,
        py::arg("machines") = 5, py::arg("min_proc") = 1, py::arg("max_proc") = 5, py::arg("placement") = 1,
        py::arg("distinct_machines") = false, py::arg("arrival_span") = 0, py::arg("weights") = "equal",
        py::arg("seed") = 0);
  m.def("greedy_pack_interval", &pack, py::arg("items"), py::arg("capacity"), py::arg("start") = "0");
}
