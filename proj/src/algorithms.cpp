#include "synchpack/algorithms.hpp"

#include "synchpack/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace synchpack {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"sp1", "sp2", "sp3", "psrs", "tetris-p", "tetris-np", "jsqmw"};
  return names;
}

bool is_known_algorithm(const std::string& name) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_non_preemptive_algorithm(const std::string& name) {
  return name == "sp2" || name == "tetris-np" || name == "jsqmw";
}

namespace {

AlgoResult baseline_result(const std::string& name, const Instance& instance, Schedule schedule) {
  AlgoResult result{std::move(schedule), {}};
  result.stats.algorithm = name;
  result.stats.objective = schedule_objective(instance, result.schedule);
  return result;
}

}  // namespace

AlgoResult run_algorithm(const std::string& name, const Instance& instance, const AlgoOptions& options) {
  if (name == "sp1") {
    Sp1Options o;
    o.epsilon = options.epsilon;
    o.sample_seed = options.seed;
    o.solver = options.solver;
    return synchpack1(instance, o);
  }
  if (name == "sp2") {
    Sp2Options o;
    o.compact = options.compact;
    o.sample_seed = options.seed;
    o.solver = options.solver;
    return synchpack2(instance, o);
  }
  if (name == "sp3") return synchpack3(instance, options.solver);
  if (name == "psrs") return baseline_result(name, instance, psrs(instance));
  if (name == "tetris-p") return baseline_result(name, instance, tetris(instance, true, options.remote_penalty));
  if (name == "tetris-np") return baseline_result(name, instance, tetris(instance, false, options.remote_penalty));
  if (name == "jsqmw") return baseline_result(name, instance, jsq_mw(instance));
  throw std::invalid_argument("unknown algorithm: " + name);
}

Relaxation parse_relaxation(const std::string& text) {
  if (text == "lp1") return Relaxation::Lp1;
  if (text == "lp2") return Relaxation::Lp2;
  if (text == "lp3") return Relaxation::Lp3;
  throw std::invalid_argument("unknown relaxation: " + text);
}

std::string to_string(Relaxation relaxation) {
  switch (relaxation) {
    case Relaxation::Lp1: return "lp1";
    case Relaxation::Lp2: return "lp2";
    case Relaxation::Lp3: return "lp3";
  }
  return "?";
}

Rational lower_bound(const Instance& instance, Relaxation relaxation, const Rational& epsilon,
                     const lp::LpSolver* solver) {
  if (instance.job_count() == 0) return 0;
  lp::LpModel model;
  switch (relaxation) {
    case Relaxation::Lp1: model = build_lp1(instance, build_intervals(horizon_upper_bound(instance), epsilon)); break;
    case Relaxation::Lp2: model = build_lp2(instance, build_intervals(horizon_upper_bound(instance), Rational(1))); break;
    case Relaxation::Lp3: model = build_lp3(instance); break;
  }
  lp::LpSolution sol = (solver ? *solver : lp::default_solver()).solve(model, {});
  if (sol.status != lp::LpStatus::Optimal)
    throw std::runtime_error("relaxation not solved to optimality: " + lp::to_string(sol.status));
  return rational_from_double(sol.objective);
}

Relaxation matching_relaxation(const std::string& algorithm, const Instance& instance) {
  if (algorithm == "sp1") return Relaxation::Lp1;
  if (algorithm == "sp2") return Relaxation::Lp2;
  if (algorithm == "sp3") return Relaxation::Lp3;
  return instance.singleton_placement() ? Relaxation::Lp3 : Relaxation::Lp1;
}

}  // namespace synchpack
