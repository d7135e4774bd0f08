#include "synchpack/synchpack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace synchpack {

bool AlgoStats::all_checks_pass() const {
  return std::all_of(lemma_checks.begin(), lemma_checks.end(), [](const auto& kv) { return kv.second; });
}

Json stats_to_json(const AlgoStats& s) {
  Json doc;
  doc["algorithm"] = s.algorithm;
  doc["lp_objective"] = s.lp_objective ? Json(to_string(*s.lp_objective)) : Json(nullptr);
  doc["objective"] = to_string(s.objective);
  doc["objective_value"] = to_double(s.objective);
  doc["ratio"] = s.ratio ? Json(to_double(*s.ratio)) : Json(nullptr);
  doc["lambda"] = s.lambda ? Json(to_string(*s.lambda)) : Json(nullptr);
  doc["lemma_checks"] = Json::object();
  for (const auto& [name, ok] : s.lemma_checks) doc["lemma_checks"][name] = ok;
  return doc;
}

Rational sample_lambda(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double lambda = std::sqrt(1.0 - unit(rng));  // inverse CDF of density 2x on (0, 1]
  Rational q = snap_rational(lambda, 1000000000);
  return q > 0 ? q : make_rational(1, 1000000000);
}

namespace {

const lp::LpSolver& pick(const lp::LpSolver* solver) { return solver ? *solver : lp::default_solver(); }

lp::LpSolution solve_checked(const lp::LpSolver& solver, const lp::LpModel& model, const char* what) {
  lp::LpSolution sol = solver.solve(model, {});
  if (sol.status != lp::LpStatus::Optimal)
    throw std::runtime_error(std::string(what) + " solve failed: " + lp::to_string(sol.status));
  return sol;
}

Rational lp_value(const lp::LpSolution& sol) { return max_rational(Rational(0), rational_from_double(sol.objective)); }

void set_ratio(AlgoStats& stats) {
  if (stats.lp_objective && *stats.lp_objective > 0) stats.ratio = stats.objective / *stats.lp_objective;
}

Rational total_weight(const Instance& instance) {
  Rational w = 0;
  for (const Job& j : instance.jobs()) w += j.weight;
  return w;
}

}  // namespace

AlgoResult synchpack1(const Instance& instance, const Sp1Options& options, Sp1Trace* trace) {
  AlgoResult out;
  out.stats.algorithm = "sp1";
  if (instance.job_count() == 0) {
    out.schedule = Schedule::empty_for(instance, ScheduleMode::PreemptiveMigratory);
    out.stats.lp_objective = Rational(0);
    out.stats.lambda = Rational(1);
    return out;
  }
  const std::int64_t horizon = horizon_upper_bound(instance);
  IntervalGrid grid = build_intervals(horizon, options.epsilon);
  lp::LpModel model = build_lp1(instance, grid);
  lp::LpSolution sol = solve_checked(pick(options.solver), model, "LP1");
  FractionAssignment fa = extract_fractions(instance, model, sol, &grid);

  FractionSchedule packed = sp1_greedy_pack(instance, make_fractions(instance, fa.z));
  std::vector<bool> finish_ok = check_interval_finish_times(packed, grid);
  Rational lambda = options.sample_seed ? sample_lambda(*options.sample_seed) : derandomize_lambda(instance, packed, grid);
  out.schedule = slow_motion(instance, packed.schedule, lambda);

  out.stats.lp_objective = lp_value(sol);
  out.stats.objective = schedule_objective(instance, out.schedule);
  out.stats.lambda = lambda;
  set_ratio(out.stats);
  out.stats.lemma_checks["tau_within_3d"] = std::all_of(finish_ok.begin(), finish_ok.end(), [](bool b) { return b; });
  if (!options.sample_seed) {
    const Rational factor = 6 * (1 + options.epsilon);
    out.stats.lemma_checks["ratio_bound"] = *out.stats.lp_objective > 0
                                                ? out.stats.objective <= factor * *out.stats.lp_objective
                                                : out.stats.objective <= total_weight(instance) * horizon;
  }
  if (trace) {
    trace->tau = interval_finish_times(packed, grid.size());
    trace->grid = std::move(grid);
    trace->fractions = std::move(fa);
    trace->packed = std::move(packed);
  }
  return out;
}

namespace {

struct Sp2Run {
  Schedule schedule;
  Rational objective;
  ZTensor zbar;
  MappingGraph graph;
  IntervalAssignment assignment;
  bool matching_ok = false;
  bool completion_ok = true;
  bool proc_ok = true;
  bool pack_ok = true;
};

Sp2Run sp2_at(const Instance& instance, const FractionAssignment& fa, const IntervalGrid& grid, const Rational& lambda) {
  Sp2Run run;
  run.zbar = stretch_z(fa.z, lambda);
  run.graph = build_mapping_graph(instance, run.zbar);
  run.assignment = integral_matching(run.graph);
  run.matching_ok = matching_is_valid(run.graph, run.assignment);
  run.schedule = Schedule::empty_for(instance, ScheduleMode::NonPreemptive);

  for (int i = 0; i < instance.machine_count(); ++i) {
    Rational block_start = 0;
    for (int l = 0; l < grid.size(); ++l) {
      auto it = run.assignment.tasks_in.find({i, l});
      if (it == run.assignment.tasks_in.end()) continue;
      std::vector<TaskId> tasks = it->second;
      std::sort(tasks.begin(), tasks.end());
      std::vector<PackItem> items;
      for (TaskId id : tasks) {
        const Task& t = instance.task(id);
        items.push_back({t.size, Rational(t.proc_on(i))});
        if (t.proc_on(i) > grid.d[l]) run.proc_ok = false;
      }
      std::vector<Rational> starts = greedy_pack_interval(items, instance.capacity(i), block_start);
      const Rational dbar = grid.d[l] / lambda;
      if (!pack_bound(items, starts, instance.capacity(i), block_start, dbar).ok()) run.pack_ok = false;
      Rational block_end = block_start;
      for (std::size_t q = 0; q < tasks.size(); ++q) {
        Rational end = starts[q] + items[q].duration;
        run.schedule.of(tasks[q]).push_back({i, starts[q], end});
        block_end = max_rational(block_end, end);
        if (end > 6 * dbar) run.completion_ok = false;
      }
      block_start = block_end;
    }
  }
  run.objective = schedule_objective(instance, run.schedule);
  return run;
}

}  // namespace

AlgoResult synchpack2(const Instance& instance, const Sp2Options& options, Sp2Trace* trace) {
  AlgoResult out;
  out.stats.algorithm = "sp2";
  if (instance.job_count() == 0) {
    out.schedule = Schedule::empty_for(instance, ScheduleMode::NonPreemptive);
    out.stats.lp_objective = Rational(0);
    out.stats.lambda = Rational(1);
    return out;
  }
  IntervalGrid grid = build_intervals(horizon_upper_bound(instance), Rational(1));
  lp::LpModel model = build_lp2(instance, grid);
  lp::LpSolution sol = solve_checked(pick(options.solver), model, "LP2");
  FractionAssignment fa = extract_fractions(instance, model, sol, &grid);

  // Breakpoints of the interval-level completion step functions.
  std::set<Rational> candidates{Rational(1)};
  for (const auto& xs : fa.x) {
    Rational cum = 0;
    for (const Rational& v : xs) {
      cum += v;
      if (cum > 0 && cum <= 1) candidates.insert(cum);
    }
  }

  std::optional<Sp2Run> best;
  Rational best_lambda = 1;
  if (options.sample_seed) {
    best_lambda = sample_lambda(*options.sample_seed);
    best = sp2_at(instance, fa, grid, best_lambda);
  } else {
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      Sp2Run run = sp2_at(instance, fa, grid, *it);
      if (!best || run.objective < best->objective) {
        best = std::move(run);
        best_lambda = *it;
      }
    }
  }

  std::vector<VolumeCheck> volume = check_volume_bound(instance, best->assignment, best->zbar, grid, best_lambda);
  out.schedule = best->schedule;
  if (options.compact) compact_left(instance, out.schedule);

  out.stats.lp_objective = lp_value(sol);
  out.stats.objective = schedule_objective(instance, out.schedule);
  out.stats.lambda = best_lambda;
  set_ratio(out.stats);
  out.stats.lemma_checks["matching_valid"] = best->matching_ok;
  out.stats.lemma_checks["volume_bound"] =
      std::all_of(volume.begin(), volume.end(), [](const VolumeCheck& c) { return c.ok(); });
  out.stats.lemma_checks["completion_within_6dbar"] = best->completion_ok;
  out.stats.lemma_checks["proc_within_interval"] = best->proc_ok;
  out.stats.lemma_checks["packing_within_2max"] = best->pack_ok;
  if (!options.sample_seed)
    out.stats.lemma_checks["ratio_bound"] = out.stats.objective <= 24 * *out.stats.lp_objective;

  if (trace) {
    trace->grid = std::move(grid);
    trace->fractions = std::move(fa);
    trace->zbar = std::move(best->zbar);
    trace->graph = std::move(best->graph);
    trace->assignment = std::move(best->assignment);
    trace->volume_checks = std::move(volume);
    trace->candidate_lambdas.assign(candidates.begin(), candidates.end());
  }
  return out;
}

Schedule list_schedule_by_order(const Instance& instance, const std::vector<int>& job_order) {
  std::vector<int> rank(instance.job_count());
  for (std::size_t r = 0; r < job_order.size(); ++r) rank.at(job_order[r]) = static_cast<int>(r);
  Schedule out = Schedule::empty_for(instance, ScheduleMode::PreemptiveFixed);

  for (int i = 0; i < instance.machine_count(); ++i) {
    std::vector<TaskId> list;
    for (TaskId id : instance.task_ids())
      if (instance.task(id).placement().front() == i) list.push_back(id);
    std::stable_sort(list.begin(), list.end(), [&](TaskId a, TaskId b) { return rank[a.job] < rank[b.job]; });
    const std::size_t n = list.size();
    std::vector<Rational> remaining(n), opened(n);
    std::vector<bool> running(n, false);
    for (std::size_t q = 0; q < n; ++q) remaining[q] = instance.task(list[q]).proc_on(i);
    std::size_t left = n;
    Rational t = 0;
    while (left > 0) {
      Rational height = 0;
      std::vector<bool> next(n, false);
      for (std::size_t q = 0; q < n; ++q) {
        if (remaining[q] == 0) continue;
        const Rational& a = instance.task(list[q]).size;
        if (height + a <= instance.capacity(i)) {
          next[q] = true;
          height += a;
        }
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (running[q] && !next[q]) out.of(list[q]).push_back({i, opened[q], t});
        if (!running[q] && next[q]) opened[q] = t;
        running[q] = next[q];
      }
      std::optional<Rational> step;
      for (std::size_t q = 0; q < n; ++q)
        if (running[q] && (!step || remaining[q] < *step)) step = remaining[q];
      if (!step) throw std::logic_error("list scheduling stalled");
      t += *step;
      for (std::size_t q = 0; q < n; ++q) {
        if (!running[q]) continue;
        remaining[q] -= *step;
        if (remaining[q] == 0) {
          out.of(list[q]).push_back({i, opened[q], t});
          running[q] = false;
          --left;
        }
      }
    }
  }
  normalize_segments(out);
  return out;
}

AlgoResult synchpack3(const Instance& instance, const lp::LpSolver* solver, Sp3Trace* trace) {
  AlgoResult out;
  out.stats.algorithm = "sp3";
  lp::LpModel model = build_lp3(instance);
  if (instance.job_count() == 0) {
    out.schedule = Schedule::empty_for(instance, ScheduleMode::PreemptiveFixed);
    out.stats.lp_objective = Rational(0);
    return out;
  }
  lp::LpSolution sol = solve_checked(pick(solver), model, "LP3");
  FractionAssignment fa = extract_fractions(instance, model, sol, nullptr);

  std::vector<int> order(instance.job_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fa.completion[a] < fa.completion[b]; });
  out.schedule = list_schedule_by_order(instance, order);

  out.stats.lp_objective = lp_value(sol);
  out.stats.objective = schedule_objective(instance, out.schedule);
  set_ratio(out.stats);
  out.stats.lemma_checks["ratio_bound"] = out.stats.objective <= 4 * *out.stats.lp_objective;
  if (trace) {
    trace->ordering = std::move(fa);
    trace->job_order = order;
  }
  return out;
}

void compact_left(const Instance& instance, Schedule& schedule) {
  if (schedule.mode != ScheduleMode::NonPreemptive) throw std::invalid_argument("compaction needs a non-preemptive schedule");
  for (int i = 0; i < instance.machine_count(); ++i) {
    std::vector<TaskId> tasks;
    for (TaskId id : instance.task_ids())
      if (!schedule.of(id).empty() && schedule.of(id).front().machine == i) tasks.push_back(id);
    std::stable_sort(tasks.begin(), tasks.end(),
                     [&](TaskId a, TaskId b) { return schedule.of(a).front().start < schedule.of(b).front().start; });

    // Peak height over [from, to) of every task on the machine except `skip`.
    auto fits = [&](TaskId skip, const Rational& from, const Rational& to) {
      std::vector<std::pair<Rational, Rational>> ev;
      Rational base = 0;
      for (TaskId o : tasks) {
        if (o == skip) continue;
        const Segment& s = schedule.of(o).front();
        if (s.end <= from || s.start >= to) continue;
        if (s.start <= from)
          base += instance.task(o).size;
        else
          ev.emplace_back(s.start, instance.task(o).size);
        if (s.end < to) ev.emplace_back(s.end, -instance.task(o).size);
      }
      std::sort(ev.begin(), ev.end());
      Rational h = base, limit = instance.capacity(i) - instance.task(skip).size;
      if (h > limit) return false;
      for (const auto& [time, delta] : ev) {
        h += delta;
        if (h > limit) return false;
      }
      return true;
    };

    Rational floor_start = 0;
    for (TaskId id : tasks) {
      Segment& seg = schedule.of(id).front();
      Rational len = seg.end - seg.start;
      std::set<Rational> candidates{floor_start};
      for (TaskId o : tasks) {
        const Rational& e = schedule.of(o).front().end;
        if (o != id && e > floor_start && e < seg.start) candidates.insert(e);
      }
      for (const Rational& c : candidates) {
        if (c >= seg.start) break;
        if (fits(id, c, c + len)) {
          seg.start = c;
          seg.end = c + len;
          break;
        }
      }
      floor_start = seg.start;
    }
  }
}

}  // namespace synchpack
