#include "synchpack/greedy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace synchpack {

std::vector<TaskFraction> make_fractions(const Instance& instance, const ZTensor& z) {
  std::vector<TaskFraction> out;
  for (TaskId id : instance.task_ids()) {
    const Task& task = instance.task(id);
    for (const ZEntry& e : z.at(id.job).at(id.task)) {
      if (e.value <= 0) continue;
      Rational dur = e.value * task.proc_on(e.machine);
      out.push_back({id, e.machine, e.interval, task.size, dur, dur});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TaskFraction& a, const TaskFraction& b) {
    return std::tie(a.interval, a.machine, a.task) < std::tie(b.interval, b.machine, b.task);
  });
  return out;
}

FractionSchedule sp1_greedy_pack(const Instance& instance, std::vector<TaskFraction> fractions) {
  FractionSchedule out;
  const std::size_t n = fractions.size();
  out.pieces.resize(n);

  std::map<TaskId, int> running_task;  // task -> running fraction index
  std::vector<Rational> height(instance.machine_count(), Rational(0));
  std::vector<bool> running(n, false), done(n, false);
  std::vector<Rational> opened(n);
  std::size_t remaining_count = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (fractions[f].remaining <= 0)
      done[f] = true;
    else
      ++remaining_count;
    if (instance.capacity(fractions[f].machine) < fractions[f].size)
      throw PreconditionError("task fraction placed on a machine smaller than the task");
  }

  auto stop = [&](std::size_t f, const Rational& t) {
    running[f] = false;
    height[fractions[f].machine] -= fractions[f].size;
    running_task.erase(fractions[f].task);
    if (opened[f] < t) out.pieces[f].push_back({fractions[f].machine, opened[f], t});
  };

  Rational t = 0;
  while (remaining_count > 0) {
    std::optional<int> lowest_waiting;
    for (std::size_t f = 0; f < n; ++f)
      if (!done[f] && !running[f] && (!lowest_waiting || fractions[f].interval < *lowest_waiting))
        lowest_waiting = fractions[f].interval;
    if (lowest_waiting)
      for (std::size_t f = 0; f < n; ++f)
        if (running[f] && fractions[f].interval > *lowest_waiting) stop(f, t);

    for (std::size_t f = 0; f < n; ++f) {
      if (done[f] || running[f] || running_task.count(fractions[f].task)) continue;
      int i = fractions[f].machine;
      if (height[i] + fractions[f].size > instance.capacity(i)) continue;
      running[f] = true;
      height[i] += fractions[f].size;
      running_task[fractions[f].task] = static_cast<int>(f);
      opened[f] = t;
    }

    std::optional<Rational> step;
    for (std::size_t f = 0; f < n; ++f)
      if (running[f] && (!step || fractions[f].remaining < *step)) step = fractions[f].remaining;
    if (!step) throw std::logic_error("greedy packing stalled with unfinished fractions");
    t += *step;
    for (std::size_t f = 0; f < n; ++f) {
      if (!running[f]) continue;
      fractions[f].remaining -= *step;
      if (fractions[f].remaining == 0) {
        stop(f, t);
        done[f] = true;
        --remaining_count;
      }
    }
  }

  out.schedule = Schedule::empty_for(instance, ScheduleMode::PreemptiveMigratory);
  for (std::size_t f = 0; f < n; ++f)
    for (const Segment& s : out.pieces[f]) out.schedule.of(fractions[f].task).push_back(s);
  normalize_segments(out.schedule);
  out.fractions = std::move(fractions);
  return out;
}

std::vector<Rational> interval_finish_times(const FractionSchedule& s, int interval_count) {
  std::vector<Rational> tau(interval_count, Rational(0));
  for (std::size_t f = 0; f < s.fractions.size(); ++f) {
    int l = s.fractions[f].interval;
    for (const Segment& p : s.pieces[f])
      if (tau.at(l) < p.end) tau[l] = p.end;
  }
  for (int l = 1; l < interval_count; ++l)
    if (tau[l] < tau[l - 1]) tau[l] = tau[l - 1];
  return tau;
}

std::vector<bool> check_interval_finish_times(const FractionSchedule& s, const IntervalGrid& grid, const Rational& factor) {
  auto tau = interval_finish_times(s, grid.size());
  std::vector<bool> ok(grid.size());
  for (int l = 0; l < grid.size(); ++l) ok[l] = tau[l] <= factor * grid.d[l];
  return ok;
}

Schedule slow_motion(const Instance& instance, const Schedule& s, const Rational& lambda) {
  if (lambda <= 0 || lambda > 1) throw std::invalid_argument("lambda must lie in (0, 1]");
  Schedule out = Schedule::empty_for(instance, s.mode);
  for (TaskId id : instance.task_ids()) {
    const Task& task = instance.task(id);
    std::vector<Segment> segs = s.of(id);
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
    Rational left = 1;  // unprocessed fraction of the task
    for (const Segment& seg : segs) {
      if (left <= 0) break;
      Rational p = task.proc_on(seg.machine);
      Rational begin = seg.start / lambda;
      Rational window = (seg.end - seg.start) / lambda;
      Rational run = min_rational(window, left * p);
      out.of(id).push_back({seg.machine, begin, begin + run});
      left -= run / p;
    }
  }
  normalize_segments(out);
  return out;
}

Rational StepFunction::at(const Rational& lambda) const {
  for (std::size_t q = 0; q < levels.size(); ++q)
    if (lambda <= levels[q]) return values[q];
  throw std::out_of_range("lambda above the step function domain");
}

Rational choose_lambda(const std::vector<Rational>& weights, const std::vector<StepFunction>& per_job) {
  if (weights.size() != per_job.size()) throw std::invalid_argument("weights and step functions differ in length");
  std::set<Rational> candidates{Rational(1)};
  for (const StepFunction& f : per_job)
    for (const Rational& l : f.levels)
      if (l > 0 && l <= 1) candidates.insert(l);
  Rational best_lambda = 1;
  std::optional<Rational> best_value;
  // Descending scan, strict improvement only: ties keep the larger lambda.
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    Rational value = 0;
    for (std::size_t j = 0; j < per_job.size(); ++j) value += weights[j] * per_job[j].at(*it);
    value /= *it;
    if (!best_value || value < *best_value) {
      best_value = value;
      best_lambda = *it;
    }
  }
  return best_lambda;
}

std::vector<StepFunction> completion_step_functions(const Instance& instance, const FractionSchedule& s,
                                                    int interval_count) {
  auto tau = interval_finish_times(s, interval_count);
  std::vector<StepFunction> out(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j) {
    StepFunction& f = out[j];
    for (int l = 0; l < interval_count; ++l) {
      // Fraction of job j (minimum over its tasks) completed by tau_l.
      std::optional<Rational> job_frac;
      for (int k = 0; k < static_cast<int>(instance.jobs()[j].tasks.size()); ++k) {
        const Task& task = instance.task({j, k});
        Rational frac = 0;
        for (const Segment& seg : s.schedule.of({j, k})) {
          if (seg.start >= tau[l]) continue;
          frac += (min_rational(seg.end, tau[l]) - seg.start) / task.proc_on(seg.machine);
        }
        if (!job_frac || frac < *job_frac) job_frac = frac;
      }
      Rational level = min_rational(*job_frac, Rational(1));
      if (level <= 0) continue;
      if (!f.levels.empty() && level <= f.levels.back()) continue;
      f.levels.push_back(level);
      f.values.push_back(tau[l]);
    }
    if (f.levels.empty() || f.levels.back() != 1)
      throw std::logic_error("job " + std::to_string(j) + " unfinished at the last interval boundary");
  }
  return out;
}

Rational derandomize_lambda(const Instance& instance, const FractionSchedule& s, const IntervalGrid& grid) {
  std::vector<Rational> weights;
  for (const Job& j : instance.jobs()) weights.push_back(j.weight);
  return choose_lambda(weights, completion_step_functions(instance, s, grid.size()));
}

std::vector<Rational> greedy_pack_interval(const std::vector<PackItem>& items, const Rational& capacity,
                                           const Rational& start) {
  const std::size_t n = items.size();
  for (const PackItem& it : items) {
    if (it.size > capacity) throw std::invalid_argument("item larger than capacity");
    if (it.size <= 0 || it.duration <= 0) throw std::invalid_argument("item with non-positive size or duration");
  }
  std::vector<std::optional<Rational>> starts(n);
  std::vector<Rational> end(n);
  std::size_t placed = 0;
  Rational t = start;
  while (placed < n) {
    Rational height = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (starts[q] && *starts[q] <= t && t < end[q]) height += items[q].size;
    for (std::size_t q = 0; q < n; ++q) {
      if (starts[q] || height + items[q].size > capacity) continue;
      starts[q] = t;
      end[q] = t + items[q].duration;
      height += items[q].size;
      ++placed;
    }
    std::optional<Rational> next;
    for (std::size_t q = 0; q < n; ++q)
      if (starts[q] && end[q] > t && (!next || end[q] < *next)) next = end[q];
    if (!next) break;
    t = *next;
  }
  std::vector<Rational> out;
  for (auto& s : starts) out.push_back(*s);
  return out;
}

PackBound pack_bound(const std::vector<PackItem>& items, const std::vector<Rational>& starts, const Rational& capacity,
                     const Rational& start, const Rational& nominal_length) {
  Rational makespan = 0, volume = 0;
  for (std::size_t q = 0; q < items.size(); ++q) {
    makespan = max_rational(makespan, starts[q] + items[q].duration - start);
    volume += items[q].size * items[q].duration;
  }
  Rational v = volume / (capacity * nominal_length);
  return {makespan / nominal_length, 2 * max_rational(Rational(1), v)};
}

}  // namespace synchpack
