#include "synchpack/oracle.hpp"

#include "synchpack/lpsolve.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace synchpack {

namespace {

struct Scaled {
  std::vector<std::int64_t> capacity;
  std::vector<std::int64_t> size;    // per flat task
  std::vector<std::int64_t> weight;  // per job
};

std::int64_t to_int(const Rational& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::overflow_error("oracle scaling overflow");
  return q.get_num().get_si();
}

Scaled scale(const Instance& instance, const std::vector<TaskId>& ids) {
  mpz_class size_den = 1, weight_den = 1;
  for (const Rational& m : instance.machines()) size_den = lcm(size_den, m.get_den());
  for (TaskId id : ids) size_den = lcm(size_den, instance.task(id).size.get_den());
  for (const Job& j : instance.jobs()) weight_den = lcm(weight_den, j.weight.get_den());
  Scaled s;
  for (const Rational& m : instance.machines()) s.capacity.push_back(to_int(m * size_den));
  for (TaskId id : ids) s.size.push_back(to_int(instance.task(id).size * size_den));
  for (const Job& j : instance.jobs()) s.weight.push_back(to_int(j.weight * weight_den));
  return s;
}

OptResult non_preemptive(const Instance& instance, const std::vector<TaskId>& ids, std::int64_t horizon) {
  Scaled sc = scale(instance, ids);
  const int n = static_cast<int>(ids.size());
  std::vector<std::vector<std::int64_t>> load(instance.machine_count(), std::vector<std::int64_t>(horizon, 0));
  std::vector<int> machine(n), start(n), best_machine(n), best_start(n);
  std::optional<std::int64_t> best;

  auto evaluate = [&]() {
    std::vector<std::int64_t> completion(instance.job_count(), 0);
    for (int t = 0; t < n; ++t) {
      std::int64_t end = start[t] + instance.task(ids[t]).proc_on(machine[t]);
      completion[ids[t].job] = std::max(completion[ids[t].job], end);
    }
    std::int64_t obj = 0;
    for (int j = 0; j < instance.job_count(); ++j) obj += sc.weight[j] * completion[j];
    if (!best || obj < *best) {
      best = obj;
      best_machine = machine;
      best_start = start;
    }
  };

  auto dfs = [&](auto&& self, int t) -> void {
    if (t == n) {
      evaluate();
      return;
    }
    for (int i : instance.usable_machines(ids[t])) {
      std::int64_t p = instance.task(ids[t]).proc_on(i);
      for (std::int64_t s = 0; s + p <= horizon; ++s) {
        bool fits = true;
        for (std::int64_t u = s; u < s + p && fits; ++u) fits = load[i][u] + sc.size[t] <= sc.capacity[i];
        if (!fits) continue;
        for (std::int64_t u = s; u < s + p; ++u) load[i][u] += sc.size[t];
        machine[t] = i;
        start[t] = static_cast<int>(s);
        self(self, t + 1);
        for (std::int64_t u = s; u < s + p; ++u) load[i][u] -= sc.size[t];
      }
    }
  };
  dfs(dfs, 0);
  if (!best) throw std::runtime_error("no non-preemptive schedule fits within the horizon");

  OptResult r;
  r.schedule = Schedule::empty_for(instance, ScheduleMode::NonPreemptive);
  for (int t = 0; t < n; ++t) {
    std::int64_t p = instance.task(ids[t]).proc_on(best_machine[t]);
    r.schedule.of(ids[t]).push_back({best_machine[t], Rational(best_start[t]), Rational(best_start[t] + p)});
  }
  r.objective = schedule_objective(instance, r.schedule);
  return r;
}

// One configuration: machine per task in `alive` (-1 = idle).
using Config = std::vector<int>;

void enumerate_configs(const Instance& instance, const std::vector<TaskId>& ids, const std::vector<int>& alive,
                       const std::vector<std::vector<int>>& allowed, std::size_t pos, Config& cur,
                       std::vector<Rational>& used, std::vector<Config>& out) {
  if (pos == alive.size()) {
    if (std::any_of(cur.begin(), cur.end(), [](int m) { return m >= 0; })) out.push_back(cur);
    return;
  }
  cur[pos] = -1;
  enumerate_configs(instance, ids, alive, allowed, pos + 1, cur, used, out);
  const Rational& a = instance.task(ids[alive[pos]]).size;
  for (int i : allowed[alive[pos]]) {
    if (used[i] + a > instance.capacity(i)) continue;
    used[i] += a;
    cur[pos] = i;
    enumerate_configs(instance, ids, alive, allowed, pos + 1, cur, used, out);
    used[i] -= a;
  }
  cur[pos] = -1;
}

struct OrderSolution {
  Rational objective;
  Schedule schedule;
};

std::optional<OrderSolution> solve_order(const Instance& instance, const std::vector<TaskId>& ids,
                                         const std::vector<int>& order, const std::vector<std::vector<int>>& allowed,
                                         ScheduleMode mode) {
  const int n = static_cast<int>(ids.size());
  std::vector<int> last_pos(instance.job_count(), -1);
  for (int r = 0; r < n; ++r) last_pos[ids[order[r]].job] = r;

  lp::LpModel model;
  struct ColInfo {
    int interval;
    std::vector<int> alive;
    Config config;
  };
  std::vector<ColInfo> info;
  std::vector<std::vector<lp::Term>> rows(n);  // indexed by task position in order
  std::vector<int> pos_of(n);
  for (int r = 0; r < n; ++r) pos_of[order[r]] = r;

  for (int r = 0; r < n; ++r) {
    std::vector<int> alive(order.begin() + r, order.end());
    std::vector<Config> configs;
    Config cur(alive.size(), -1);
    std::vector<Rational> used(instance.machine_count(), Rational(0));
    enumerate_configs(instance, ids, alive, allowed, 0, cur, used, configs);
    Rational cost = 0;
    for (int j = 0; j < instance.job_count(); ++j)
      if (r <= last_pos[j]) cost += instance.jobs()[j].weight;
    for (const Config& c : configs) {
      int col = model.add_column({}, "y" + std::to_string(info.size()), cost);
      for (std::size_t q = 0; q < alive.size(); ++q)
        if (c[q] >= 0)
          rows[pos_of[alive[q]]].push_back({col, Rational(1) / instance.task(ids[alive[q]]).proc_on(c[q])});
      info.push_back({r, alive, c});
    }
  }
  for (int r = 0; r < n; ++r) {
    // Task order[r] finishes exactly at the end of interval r: only columns of intervals <= r contribute.
    model.add_row("done" + std::to_string(r), rows[r], lp::Sense::Equal, Rational(1));
  }
  lp::ExactLpSolution sol = lp::solve_lp_exact(model);
  if (sol.status != lp::LpStatus::Optimal) return std::nullopt;

  OrderSolution out;
  out.schedule = Schedule::empty_for(instance, mode);
  Rational cursor = 0;
  for (std::size_t c = 0; c < info.size(); ++c) {
    const Rational& len = sol.values[c];
    if (len <= 0) continue;
    for (std::size_t q = 0; q < info[c].alive.size(); ++q)
      if (info[c].config[q] >= 0)
        out.schedule.of(ids[info[c].alive[q]]).push_back({info[c].config[q], cursor, cursor + len});
    cursor += len;
  }
  normalize_segments(out.schedule);
  out.objective = sol.objective;
  return out;
}

OptResult preemptive(const Instance& instance, const std::vector<TaskId>& ids, ScheduleMode mode) {
  const int n = static_cast<int>(ids.size());
  std::vector<std::vector<int>> usable(n);
  for (int t = 0; t < n; ++t) usable[t] = instance.usable_machines(ids[t]);

  std::optional<OrderSolution> best;
  auto try_allowed = [&](const std::vector<std::vector<int>>& allowed) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
      auto sol = solve_order(instance, ids, order, allowed, mode);
      if (sol && (!best || sol->objective < best->objective)) best = std::move(sol);
    } while (std::next_permutation(order.begin(), order.end()));
  };

  if (mode == ScheduleMode::PreemptiveMigratory) {
    try_allowed(usable);
  } else {
    std::vector<std::vector<int>> allowed(n);
    auto assign = [&](auto&& self, int t) -> void {
      if (t == n) {
        try_allowed(allowed);
        return;
      }
      for (int i : usable[t]) {
        allowed[t] = {i};
        self(self, t + 1);
      }
    };
    assign(assign, 0);
  }
  if (!best) throw std::runtime_error("no preemptive schedule found");
  OptResult r;
  r.schedule = std::move(best->schedule);
  r.objective = schedule_objective(instance, r.schedule);
  return r;
}

}  // namespace

OptResult brute_force_opt(const Instance& instance, ScheduleMode mode, std::int64_t horizon) {
  if (instance.task_count() > OracleLimits::max_tasks)
    throw OracleGuardError("oracle refuses instances with more than 4 tasks");
  if (instance.machine_count() > OracleLimits::max_machines)
    throw OracleGuardError("oracle refuses instances with more than 3 machines");
  if (horizon > OracleLimits::max_horizon || horizon < 0)
    throw OracleGuardError("oracle horizon must lie in [0, 10]");
  auto ids = instance.task_ids();
  if (ids.empty()) return {Rational(0), Schedule::empty_for(instance, mode)};
  if (mode == ScheduleMode::NonPreemptive) return non_preemptive(instance, ids, horizon);
  return preemptive(instance, ids, mode);
}

}  // namespace synchpack
