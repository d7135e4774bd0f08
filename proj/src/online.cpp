#include "synchpack/online.hpp"

#include <cmath>
#include <optional>

namespace synchpack {

Rational batch_length(const OnlineConfig& config, int i) {
  const Rational grain = make_rational(1, 1000000000);
  Rational e = snap_rational(std::exp(-to_double(config.beta) * i), 1000000000);
  Rational tau = config.tau0 / (1 + config.gamma * e);
  Rational snapped = floor_rational(tau / grain) * grain;
  return snapped > 0 ? snapped : grain;
}

namespace {

struct TaskState {
  Rational remaining{1};  // fraction of the task still to process
  bool committed = false; // non-preemptive: start fixed
};

}  // namespace

OnlineResult run_online(const Instance& stream, const OnlineConfig& config) {
  if (config.tau0 <= 0 || config.gamma < 0 || config.beta < 0)
    throw std::invalid_argument("online needs tau0 > 0 and gamma, beta >= 0");
  if (!is_known_algorithm(config.algorithm)) throw std::invalid_argument("unknown algorithm: " + config.algorithm);
  if (!config.preemptive && !is_non_preemptive_algorithm(config.algorithm))
    throw PreconditionError("non-preemptive online mode needs a non-preemptive algorithm");

  const ScheduleMode mode = !config.preemptive             ? ScheduleMode::NonPreemptive
                            : stream.singleton_placement() ? ScheduleMode::PreemptiveFixed
                                                           : ScheduleMode::PreemptiveMigratory;
  OnlineResult result{Schedule::empty_for(stream, mode), {}, {}, Rational(0)};
  std::vector<std::vector<TaskState>> state(stream.job_count());
  std::size_t left = 0;
  for (int j = 0; j < stream.job_count(); ++j) {
    state[j].resize(stream.jobs()[j].tasks.size());
    left += state[j].size();
  }

  Rational boundary = 0;
  Rational drained = 0;  // end of committed non-preemptive work
  for (int batch = 1; left > 0; ++batch) {
    const Rational next = boundary + batch_length(config, batch);
    const Rational start = max_rational(boundary, drained);
    if (start < next) {
      // Residual instance of arrived, unfinished, uncommitted tasks.
      std::vector<Job> jobs;
      std::vector<std::vector<TaskId>> origin;
      for (int j = 0; j < stream.job_count(); ++j) {
        const Job& job = stream.jobs()[j];
        if (job.arrival > boundary) continue;
        Job residual;
        residual.weight = job.weight;
        std::vector<TaskId> ids;
        for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
          const TaskState& s = state[j][k];
          if (s.remaining == 0 || s.committed) continue;
          Task t = job.tasks[k];
          for (auto& [i, p] : t.proc) p = std::max<std::int64_t>(1, ceil_to_int(s.remaining * p));
          residual.tasks.push_back(std::move(t));
          ids.push_back({j, k});
        }
        if (residual.tasks.empty()) continue;
        jobs.push_back(std::move(residual));
        origin.push_back(std::move(ids));
      }
      if (!jobs.empty()) {
        result.boundaries.push_back(start);
        Instance residual(stream.machines(), std::move(jobs));
        Schedule plan = run_algorithm(config.algorithm, residual, config.options).schedule;
        std::optional<Rational> first;
        for (const auto& job : plan.segments)
          for (const auto& task : job)
            for (const Segment& s : task)
              if (!first || s.start < *first) first = s.start;
        const Rational shift = start - first.value_or(Rational(0));

        for (std::size_t rj = 0; rj < origin.size(); ++rj) {
          for (std::size_t rk = 0; rk < origin[rj].size(); ++rk) {
            const TaskId id = origin[rj][rk];
            TaskState& s = state[id.job][id.task];
            const auto& segs = plan.segments[rj][rk];
            if (!config.preemptive) {
              if (segs.empty() || segs.front().start + shift >= next) continue;
              for (const Segment& seg : segs) {
                result.schedule.of(id).push_back({seg.machine, seg.start + shift, seg.end + shift});
                drained = max_rational(drained, seg.end + shift);
              }
              s.committed = true;
              s.remaining = 0;
              --left;
              continue;
            }
            for (const Segment& seg : segs) {
              if (s.remaining == 0) break;
              const Rational a = seg.start + shift;
              if (a >= next) break;
              Rational b = min_rational(seg.end + shift, next);
              const Rational p = stream.task(id).proc_on(seg.machine);
              const Rational need = s.remaining * p;
              if (b - a >= need) {
                b = a + need;
                s.remaining = 0;
              } else {
                s.remaining -= (b - a) / p;
              }
              result.schedule.of(id).push_back({seg.machine, a, b});
            }
            if (s.remaining == 0) --left;
          }
        }
      }
    }
    boundary = next;
  }
  normalize_segments(result.schedule);

  std::vector<Rational> completion = completion_times(stream, result.schedule);
  Rational weighted = 0, weights = 0;
  for (int j = 0; j < stream.job_count(); ++j) {
    const Job& job = stream.jobs()[j];
    result.delays.push_back(completion[j] - job.arrival);
    weighted += job.weight * result.delays.back();
    weights += job.weight;
  }
  result.weighted_average_delay = weights > 0 ? weighted / weights : Rational(0);
  return result;
}

}  // namespace synchpack
