#include "synchpack/baselines.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

namespace synchpack {

Rational psrs_delay_constant() { return make_rational(836, 1000); }

namespace {

struct Piece {
  TaskId task;
  Rational start;
  Rational end;
};

// Earliest s >= t with at least `need` free capacity throughout [s, s + len).
Rational earliest_fit(const std::vector<Piece>& pieces, const Instance& instance, const Rational& capacity,
                      const Rational& need, const Rational& len, const Rational& t) {
  std::set<Rational> candidates{t};
  for (const Piece& p : pieces)
    if (p.end > t) candidates.insert(p.end);
  for (const Rational& s : candidates) {
    std::vector<std::pair<Rational, Rational>> ev;
    Rational h = 0;
    for (const Piece& p : pieces) {
      if (p.end <= s || p.start >= s + len) continue;
      const Rational& a = instance.task(p.task).size;
      if (p.start <= s)
        h += a;
      else
        ev.emplace_back(p.start, a);
      if (p.end < s + len) ev.emplace_back(p.end, -a);
    }
    std::sort(ev.begin(), ev.end());
    bool ok = h + need <= capacity;
    for (const auto& [time, delta] : ev) {
      if (!ok) break;
      h += delta;
      ok = h + need <= capacity;
    }
    if (ok) return s;
  }
  throw std::logic_error("no fitting start found");
}

}  // namespace

Schedule psrs(const Instance& instance) {
  if (!instance.singleton_placement()) throw PreconditionError("psrs needs singleton placement sets");
  Schedule out = Schedule::empty_for(instance, ScheduleMode::PreemptiveFixed);
  const Rational V = psrs_delay_constant();
  for (int i = 0; i < instance.machine_count(); ++i) {
    std::vector<TaskId> list;
    for (TaskId id : instance.task_ids())
      if (instance.task(id).proc.begin()->first == i) list.push_back(id);
    auto ratio = [&](TaskId id) -> Rational { return instance.jobs()[id.job].weight / instance.task(id).volume_on(i); };
    std::stable_sort(list.begin(), list.end(), [&](TaskId a, TaskId b) { return ratio(a) > ratio(b); });

    const Rational& m = instance.capacity(i);
    std::vector<Piece> pieces;
    Rational now = 0;
    for (TaskId id : list) {
      const Rational a = instance.task(id).size;
      const Rational p = instance.task(id).proc_on(i);
      Rational start = earliest_fit(pieces, instance, m, a, p, now);
      if (a > m / 2) {
        Rational half = earliest_fit(pieces, instance, m, m / 2, p, now);
        if (start - half >= p / V) {
          Rational tau = half + p / V;
          std::vector<Piece> shifted;
          for (const Piece& pc : pieces) {
            if (pc.end <= tau) {
              shifted.push_back(pc);
            } else if (pc.start >= tau) {
              shifted.push_back({pc.task, pc.start + p, pc.end + p});
            } else {
              shifted.push_back({pc.task, pc.start, tau});
              shifted.push_back({pc.task, tau + p, pc.end + p});
            }
          }
          pieces = std::move(shifted);
          start = tau;
        }
      }
      pieces.push_back({id, start, start + p});
      now = start;
    }
    for (const Piece& pc : pieces) out.of(pc.task).push_back({i, pc.start, pc.end});
  }
  normalize_segments(out);
  return out;
}

std::vector<int> local_machines(const Instance& instance, TaskId id) {
  std::vector<int> usable = instance.usable_machines(id);
  std::int64_t best = instance.task(id).proc_on(usable.front());
  for (int i : usable) best = std::min(best, instance.task(id).proc_on(i));
  std::vector<int> out;
  for (int i : usable)
    if (instance.task(id).proc_on(i) == best) out.push_back(i);
  return out;
}

namespace {

Rational local_proc(const Instance& instance, TaskId id) {
  return Rational(instance.task(id).proc_on(local_machines(instance, id).front()));
}

}  // namespace

std::vector<TetrisScore> tetris_scores(const Instance& instance, const std::vector<std::vector<Rational>>& remaining,
                                       const std::vector<TaskId>& waiting, const Rational& alpha) {
  std::vector<Rational> job_volume(instance.job_count(), Rational(0));
  Rational numerator = 0;
  for (TaskId id : instance.task_ids()) {
    const Rational& r = remaining[id.job][id.task];
    if (r <= 0) continue;
    const Rational w = instance.jobs()[id.job].weight;
    job_volume[id.job] += instance.task(id).size * r * local_proc(instance, id);
    numerator += w * instance.task(id).size;
  }
  Rational denominator = 0;
  for (int j = 0; j < instance.job_count(); ++j)
    if (job_volume[j] > 0) denominator += instance.jobs()[j].weight / job_volume[j];
  const Rational eps = denominator > 0 ? numerator / denominator : Rational(0);

  std::vector<TetrisScore> out;
  for (TaskId id : waiting) {
    const Rational w = instance.jobs()[id.job].weight;
    const Task& task = instance.task(id);
    std::vector<int> local = local_machines(instance, id);
    for (int i : instance.usable_machines(id)) {
      TetrisScore s{id, i, w * task.size, w * eps / job_volume[id.job], Rational(0)};
      s.score = s.weight_term + s.volume_term;
      if (std::find(local.begin(), local.end(), i) == local.end()) s.score /= alpha;
      out.push_back(s);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TetrisScore& a, const TetrisScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.task, a.machine) < std::tie(b.task, b.machine);
  });
  return out;
}

Schedule tetris(const Instance& instance, bool preemptive, const Rational& alpha) {
  if (alpha < 1) throw std::invalid_argument("remote penalty must be at least 1");
  ScheduleMode mode = !preemptive                        ? ScheduleMode::NonPreemptive
                      : instance.singleton_placement() ? ScheduleMode::PreemptiveFixed
                                                       : ScheduleMode::PreemptiveMigratory;
  Schedule out = Schedule::empty_for(instance, mode);
  std::vector<std::vector<Rational>> remaining(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j) remaining[j].assign(instance.jobs()[j].tasks.size(), Rational(1));
  std::map<TaskId, std::pair<int, Rational>> running;  // task -> (machine, opened at)
  std::vector<Rational> height(instance.machine_count(), Rational(0));
  std::size_t left = instance.task_count();
  Rational t = 0;

  auto close = [&](TaskId id, const Rational& at) {
    auto [machine, opened] = running.at(id);
    if (opened < at) out.of(id).push_back({machine, opened, at});
    height[machine] -= instance.task(id).size;
    running.erase(id);
  };

  while (left > 0) {
    if (preemptive) {
      std::vector<TaskId> ids;
      for (const auto& [id, v] : running) ids.push_back(id);
      for (TaskId id : ids) close(id, t);
    }
    std::vector<TaskId> waiting;
    for (TaskId id : instance.task_ids()) {
      const Rational& r = remaining[id.job][id.task];
      if (r > 0 && !running.count(id) && (preemptive || r == 1)) waiting.push_back(id);
    }
    std::set<TaskId> started;
    for (const TetrisScore& s : tetris_scores(instance, remaining, waiting, alpha)) {
      if (started.count(s.task)) continue;
      if (height[s.machine] + instance.task(s.task).size > instance.capacity(s.machine)) continue;
      started.insert(s.task);
      running[s.task] = {s.machine, t};
      height[s.machine] += instance.task(s.task).size;
    }
    std::optional<Rational> step;
    for (const auto& [id, v] : running) {
      Rational need = remaining[id.job][id.task] * instance.task(id).proc_on(v.first);
      if (!step || need < *step) step = need;
    }
    if (!step) throw std::logic_error("tetris stalled");
    t += *step;
    std::vector<TaskId> finished;
    for (const auto& [id, v] : running) {
      Rational& r = remaining[id.job][id.task];
      r -= *step / instance.task(id).proc_on(v.first);
      if (r == 0) finished.push_back(id);
    }
    for (TaskId id : finished) {
      close(id, t);
      --left;
    }
  }
  normalize_segments(out);
  return out;
}

Schedule jsq_mw(const Instance& instance) {
  Schedule out = Schedule::empty_for(instance, ScheduleMode::NonPreemptive);
  const int M = instance.machine_count();
  std::vector<TaskId> arrivals = instance.task_ids();
  std::stable_sort(arrivals.begin(), arrivals.end(), [&](TaskId a, TaskId b) {
    return instance.jobs()[a.job].arrival < instance.jobs()[b.job].arrival;
  });

  std::vector<std::deque<TaskId>> local(M);
  std::deque<TaskId> remote;
  std::vector<Rational> local_backlog(M, Rational(0));
  Rational remote_backlog = 0;
  std::vector<Rational> height(M, Rational(0));
  struct Run {
    TaskId task;
    int machine;
    Rational end;
  };
  std::vector<Run> running;
  std::size_t next_arrival = 0, left = arrivals.size();
  auto volume = [&](TaskId id) -> Rational { return instance.task(id).size * local_proc(instance, id); };

  Rational t = arrivals.empty() ? Rational(0) : instance.jobs()[arrivals.front().job].arrival;
  while (left > 0) {
    for (auto it = running.begin(); it != running.end();) {
      if (it->end <= t) {
        height[it->machine] -= instance.task(it->task).size;
        it = running.erase(it);
        --left;
      } else {
        ++it;
      }
    }
    if (left == 0) break;
    while (next_arrival < arrivals.size() && instance.jobs()[arrivals[next_arrival].job].arrival <= t) {
      TaskId id = arrivals[next_arrival++];
      std::vector<int> loc = local_machines(instance, id);
      bool has_remote = instance.usable_machines(id).size() > loc.size();
      int best = loc.front();
      for (int i : loc)
        if (local_backlog[i] < local_backlog[best]) best = i;
      if (has_remote && remote_backlog < local_backlog[best]) {
        remote.push_back(id);
        remote_backlog += volume(id);
      } else {
        local[best].push_back(id);
        local_backlog[best] += volume(id);
      }
    }
    for (int i = 0; i < M; ++i) {
      while (true) {
        auto try_queue = [&](std::deque<TaskId>& q, Rational& backlog) {
          for (auto it = q.begin(); it != q.end(); ++it) {
            if (!instance.usable(*it, i)) continue;
            if (height[i] + instance.task(*it).size > instance.capacity(i)) continue;
            TaskId id = *it;
            Rational end = t + instance.task(id).proc_on(i);
            out.of(id).push_back({i, t, end});
            running.push_back({id, i, end});
            height[i] += instance.task(id).size;
            backlog -= volume(id);
            q.erase(it);
            return true;
          }
          return false;
        };
        bool remote_first = remote_backlog > local_backlog[i];
        bool started = remote_first ? (try_queue(remote, remote_backlog) || try_queue(local[i], local_backlog[i]))
                                    : (try_queue(local[i], local_backlog[i]) || try_queue(remote, remote_backlog));
        if (!started) break;
      }
    }
    std::optional<Rational> next;
    for (const Run& r : running)
      if (!next || r.end < *next) next = r.end;
    if (next_arrival < arrivals.size()) {
      Rational a = instance.jobs()[arrivals[next_arrival].job].arrival;
      if (!next || a < *next) next = a;
    }
    if (!next) throw std::logic_error("jsq-mw stalled");
    t = *next;
  }
  return out;
}

}  // namespace synchpack
