#include "synchpack/lpcore.hpp"

#include <algorithm>
#include <cmath>

namespace synchpack {

using lp::LpModel;
using lp::Sense;
using lp::Term;
using lp::VarKey;
using lp::VarKind;

IntervalGrid build_intervals(std::int64_t horizon, const Rational& epsilon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  IntervalGrid g;
  g.epsilon = epsilon;
  const Rational base = 1 + epsilon;
  g.d.push_back(Rational(1));
  while (g.d.back() < horizon) g.d.push_back(g.d.back() * base);
  g.L = static_cast<int>(g.d.size()) - 1;
  g.delta.push_back(Rational(1));
  for (int l = 1; l <= g.L; ++l) g.delta.push_back(g.d[l] - g.d[l - 1]);
  return g;
}

std::string to_string_key(const VarKey& key) {
  auto s = [](int v) { return std::to_string(v); };
  switch (key.kind) {
    case VarKind::Z: return "z_" + s(key.a) + "_" + s(key.b) + "_" + s(key.c) + "_" + s(key.d);
    case VarKind::X: return "x_" + s(key.a) + "_" + s(key.b);
    case VarKind::C: return "C_" + s(key.a);
    case VarKind::Delta: return "delta_" + s(key.a) + "_" + s(key.b);
    case VarKind::Other: return "v";
  }
  return "v";
}

namespace {

int add_var(LpModel& model, const VarKey& key, const Rational& cost) {
  return model.add_column(key, to_string_key(key), cost);
}

LpModel build_interval_lp(const Instance& instance, const IntervalGrid& grid) {
  LpModel model;
  const int n_int = grid.size();
  const auto ids = instance.task_ids();

  std::vector<std::vector<int>> zcols(ids.size());  // per task, flattened [machine slot][interval]
  std::vector<std::vector<int>> machines_of(ids.size());
  for (std::size_t t = 0; t < ids.size(); ++t) {
    machines_of[t] = instance.usable_machines(ids[t]);
    for (int i : machines_of[t])
      for (int l = 0; l < n_int; ++l)
        zcols[t].push_back(add_var(model, {VarKind::Z, ids[t].job, ids[t].task, i, l}, 0));
  }
  std::vector<std::vector<int>> xcols(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j)
    for (int l = 0; l < n_int; ++l) xcols[j].push_back(add_var(model, {VarKind::X, j, l}, 0));
  std::vector<int> ccols;
  for (int j = 0; j < instance.job_count(); ++j)
    ccols.push_back(add_var(model, {VarKind::C, j}, instance.jobs()[j].weight));

  auto zcol = [&](std::size_t t, std::size_t slot, int l) { return zcols[t][slot * n_int + l]; };

  for (std::size_t t = 0; t < ids.size(); ++t) {
    std::vector<Term> terms;
    for (int c : zcols[t]) terms.push_back({c, Rational(1)});
    model.add_row("assign_" + std::to_string(ids[t].job) + "_" + std::to_string(ids[t].task), std::move(terms),
                  Sense::Equal, Rational(1));
  }
  for (std::size_t t = 0; t < ids.size(); ++t) {
    const Task& task = instance.task(ids[t]);
    for (int l = 0; l < n_int; ++l) {
      std::vector<Term> terms;
      for (std::size_t s = 0; s < machines_of[t].size(); ++s)
        for (int lp = 0; lp <= l; ++lp) terms.push_back({zcol(t, s, lp), Rational(task.proc_on(machines_of[t][s]))});
      model.add_row("time_" + std::to_string(ids[t].job) + "_" + std::to_string(ids[t].task) + "_" + std::to_string(l),
                    std::move(terms), Sense::LessEqual, grid.d[l]);
    }
  }
  for (int i = 0; i < instance.machine_count(); ++i) {
    for (int l = 0; l < n_int; ++l) {
      std::vector<Term> terms;
      for (std::size_t t = 0; t < ids.size(); ++t) {
        auto it = std::find(machines_of[t].begin(), machines_of[t].end(), i);
        if (it == machines_of[t].end()) continue;
        std::size_t s = static_cast<std::size_t>(it - machines_of[t].begin());
        Rational vol = instance.task(ids[t]).volume_on(i);
        for (int lp = 0; lp <= l; ++lp) terms.push_back({zcol(t, s, lp), vol});
      }
      model.add_row("volume_" + std::to_string(i) + "_" + std::to_string(l), std::move(terms), Sense::LessEqual,
                    instance.capacity(i) * grid.d[l]);
    }
  }
  for (std::size_t t = 0; t < ids.size(); ++t) {
    int j = ids[t].job;
    for (int l = 0; l < n_int; ++l) {
      std::vector<Term> terms;
      for (int lp = 0; lp <= l; ++lp) terms.push_back({xcols[j][lp], Rational(1)});
      for (std::size_t s = 0; s < machines_of[t].size(); ++s)
        for (int lp = 0; lp <= l; ++lp) terms.push_back({zcol(t, s, lp), Rational(-1)});
      model.add_row("sync_" + std::to_string(j) + "_" + std::to_string(ids[t].task) + "_" + std::to_string(l),
                    std::move(terms), Sense::LessEqual, Rational(0));
    }
  }
  for (int j = 0; j < instance.job_count(); ++j) {
    std::vector<Term> terms{{ccols[j], Rational(1)}};
    for (int l = 1; l < n_int; ++l) terms.push_back({xcols[j][l], -grid.left(l)});
    model.add_row("completion_" + std::to_string(j), std::move(terms), Sense::Equal, Rational(0));
  }
  for (int j = 0; j < instance.job_count(); ++j) {
    std::vector<Term> terms;
    for (int c : xcols[j]) terms.push_back({c, Rational(1)});
    model.add_row("convex_" + std::to_string(j), std::move(terms), Sense::Equal, Rational(1));
  }
  return model;
}

}  // namespace

LpModel build_lp1(const Instance& instance, const IntervalGrid& grid) { return build_interval_lp(instance, grid); }

LpModel build_lp2(const Instance& instance, const IntervalGrid& grid) {
  for (TaskId id : instance.task_ids()) {
    bool feasible = false;
    for (int i : instance.usable_machines(id))
      if (grid.d.back() >= instance.task(id).proc_on(i)) feasible = true;
    if (!feasible)
      throw InfeasibleModelError("job " + std::to_string(id.job) + " task " + std::to_string(id.task) +
                                 " is longer than every interval end point");
  }
  LpModel model = build_interval_lp(instance, grid);
  for (int c = 0; c < model.column_count(); ++c) {
    const VarKey& key = model.columns()[c].key;
    if (key.kind != VarKind::Z) continue;
    const Task& task = instance.task({key.a, key.b});
    if (grid.d[key.d] < task.proc_on(key.c)) model.set_upper(c, Rational(0));
  }
  return model;
}

LpModel build_lp3(const Instance& instance) {
  const int n = instance.job_count();
  // machine -> job -> task volume and processing time
  std::vector<std::map<int, std::pair<Rational, std::int64_t>>> on_machine(instance.machine_count());
  for (TaskId id : instance.task_ids()) {
    const Task& t = instance.task(id);
    if (t.proc.size() != 1)
      throw PreconditionError("LP3 needs singleton placement sets; job " + std::to_string(id.job) + " task " +
                              std::to_string(id.task) + " has " + std::to_string(t.proc.size()) + " machines");
    int i = t.proc.begin()->first;
    if (on_machine[i].count(id.job))
      throw PreconditionError("LP3 allows one task per job per machine; job " + std::to_string(id.job) +
                              " has several on machine " + std::to_string(i));
    on_machine[i][id.job] = {t.volume_on(i), t.proc_on(i)};
  }

  LpModel model;
  std::vector<int> ccols;
  for (int j = 0; j < n; ++j) ccols.push_back(add_var(model, {VarKind::C, j}, instance.jobs()[j].weight));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) add_var(model, {VarKind::Delta, j, k}, 0);

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < instance.machine_count(); ++i) {
      auto mine = on_machine[i].find(j);
      if (mine == on_machine[i].end()) continue;
      std::vector<Term> terms{{ccols[j], instance.capacity(i)}};
      for (const auto& [other, vp] : on_machine[i])
        if (other != j) terms.push_back({model.at({VarKind::Delta, other, j}), -vp.first});
      model.add_row("volume_" + std::to_string(j) + "_" + std::to_string(i), std::move(terms), Sense::GreaterEqual,
                    mine->second.first);
    }
  for (TaskId id : instance.task_ids()) {
    const Task& t = instance.task(id);
    model.add_row("length_" + std::to_string(id.job) + "_" + std::to_string(id.task), {{ccols[id.job], Rational(1)}},
                  Sense::GreaterEqual, Rational(t.proc.begin()->second));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      model.add_row("order_" + std::to_string(j) + "_" + std::to_string(k),
                    {{model.at({VarKind::Delta, j, k}), Rational(1)}, {model.at({VarKind::Delta, k, j}), Rational(1)}},
                    Sense::Equal, Rational(1));
  return model;
}

namespace {

// Clamp, snap to the 1/den grid and repair the sum to exactly one.
std::vector<Rational> clean_distribution(const std::vector<double>& raw, const CleaningOptions& opt,
                                         const std::string& what) {
  double sum = 0.0;
  std::vector<Rational> out(raw.size());
  for (std::size_t q = 0; q < raw.size(); ++q) {
    if (raw[q] < -opt.tolerance)
      throw FractionCorruptionError(what + " has value " + std::to_string(raw[q]) + " below tolerance");
    sum += raw[q];
    out[q] = raw[q] < opt.tolerance ? Rational(0) : snap_rational(raw[q], opt.denominator);
  }
  double slack = std::sqrt(opt.tolerance);
  if (sum < 1.0 - slack || sum > 1.0 + slack)
    throw FractionCorruptionError(what + " sums to " + std::to_string(sum));
  Rational total = 0;
  std::size_t largest = 0;
  for (std::size_t q = 0; q < out.size(); ++q) {
    total += out[q];
    if (out[largest] < out[q]) largest = q;
  }
  if (out.empty() || out[largest] <= 0) throw FractionCorruptionError(what + " has no positive mass");
  out[largest] += 1 - total;
  if (out[largest] <= 0) throw FractionCorruptionError(what + " cannot be renormalized");
  return out;
}

}  // namespace

FractionAssignment extract_fractions(const Instance& instance, const LpModel& model, const lp::LpSolution& solution,
                                     const IntervalGrid* grid, const CleaningOptions& options) {
  if (solution.status != lp::LpStatus::Optimal) throw FractionCorruptionError("LP solution is not optimal");
  if (static_cast<int>(solution.values.size()) != model.column_count())
    throw FractionCorruptionError("solution size does not match model");

  FractionAssignment fa;
  fa.solver_objective = solution.objective;
  fa.z.resize(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j) fa.z[j].resize(instance.jobs()[j].tasks.size());
  fa.completion.assign(instance.job_count(), Rational(0));

  const auto& cols = model.columns();
  for (int c = 0; c < model.column_count(); ++c) {
    double v = solution.values[c];
    if (v < -options.tolerance)
      throw FractionCorruptionError("column " + cols[c].name + " has value " + std::to_string(v));
    if (cols[c].upper && *cols[c].upper == 0 && v > options.tolerance)
      throw FractionCorruptionError("zero-fixed column " + cols[c].name + " has value " + std::to_string(v));
  }

  if (grid == nullptr) {
    for (int c = 0; c < model.column_count(); ++c) {
      const VarKey& key = cols[c].key;
      double v = std::max(0.0, solution.values[c]);
      if (key.kind == VarKind::C) fa.completion.at(key.a) = snap_rational(v, options.denominator);
      if (key.kind == VarKind::Delta) fa.delta[{key.a, key.b}] = snap_rational(std::min(v, 1.0), options.denominator);
    }
    return fa;
  }

  // Group z columns per task and x columns per job.
  std::map<TaskId, std::vector<int>> zc;
  std::vector<std::vector<int>> xc(instance.job_count(), std::vector<int>(grid->size(), -1));
  for (int c = 0; c < model.column_count(); ++c) {
    const VarKey& key = cols[c].key;
    if (key.kind == VarKind::Z) zc[{key.a, key.b}].push_back(c);
    if (key.kind == VarKind::X) xc.at(key.a).at(key.b) = c;
  }
  for (TaskId id : instance.task_ids()) {
    std::vector<int>& list = zc[id];
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return std::pair(cols[a].key.c, cols[a].key.d) < std::pair(cols[b].key.c, cols[b].key.d);
    });
    std::vector<double> raw;
    for (int c : list) raw.push_back(solution.values[c]);
    auto cleaned = clean_distribution(
        raw, options, "task (" + std::to_string(id.job) + "," + std::to_string(id.task) + ") assignment");
    for (std::size_t q = 0; q < list.size(); ++q)
      if (cleaned[q] > 0) fa.z[id.job][id.task].push_back({cols[list[q]].key.c, cols[list[q]].key.d, cleaned[q]});
  }
  fa.x.resize(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j) {
    std::vector<double> raw;
    for (int c : xc[j]) raw.push_back(c < 0 ? 0.0 : solution.values[c]);
    fa.x[j] = clean_distribution(raw, options, "job " + std::to_string(j) + " interval distribution");
    Rational comp = 0;
    for (int l = 0; l < grid->size(); ++l) comp += grid->left(l) * fa.x[j][l];
    fa.completion[j] = comp;
  }
  return fa;
}

}  // namespace synchpack
