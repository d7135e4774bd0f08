#pragma once

#include "synchpack/lpcore.hpp"
#include "synchpack/model.hpp"

#include <vector>

namespace synchpack {

struct TaskFraction {
  TaskId task;
  int machine = 0;
  int interval = 0;
  Rational size;
  Rational duration;
  Rational remaining;
};

// Materializes positive z entries, ordered by (interval, machine, job, task).
std::vector<TaskFraction> make_fractions(const Instance& instance, const ZTensor& z);

struct FractionSchedule {
  Schedule schedule;                          // merged per-task segments, preemptive-migratory
  std::vector<TaskFraction> fractions;        // list order used by the simulation
  std::vector<std::vector<Segment>> pieces;   // per fraction, in time order
};

// Event-driven list scheduling of task fractions. Running fractions of a higher interval are
// preempted (keeping progress) whenever a waiting fraction of a lower interval exists.
FractionSchedule sp1_greedy_pack(const Instance& instance, std::vector<TaskFraction> fractions);

// tau_l: time by which every fraction of interval <= l has finished (0 when none exist yet).
std::vector<Rational> interval_finish_times(const FractionSchedule& s, int interval_count);

// Per interval: tau_l <= factor * d_l.
std::vector<bool> check_interval_finish_times(const FractionSchedule& s, const IntervalGrid& grid, const Rational& factor = Rational(3));

// Stretches every segment by 1/lambda; a task then runs inside its stretched windows only until
// its work is done and leaves the rest of each window idle.
Schedule slow_motion(const Instance& instance, const Schedule& s, const Rational& lambda);

// Non-decreasing step function on (0, 1]: value(l) = value of the first step whose level >= l.
struct StepFunction {
  std::vector<Rational> levels;  // strictly increasing, last == 1
  std::vector<Rational> values;
  Rational at(const Rational& lambda) const;
};

// argmin over the union of breakpoints (always including 1) of sum_j w_j f_j(l) / l; ties to the largest l.
Rational choose_lambda(const std::vector<Rational>& weights, const std::vector<StepFunction>& per_job);

// Per job: smallest tau_l by which the job (every one of its tasks) has completed a lambda fraction in S.
std::vector<StepFunction> completion_step_functions(const Instance& instance, const FractionSchedule& s,
                                                    int interval_count);

Rational derandomize_lambda(const Instance& instance, const FractionSchedule& s, const IntervalGrid& grid);

struct PackItem {
  Rational size;
  Rational duration;
};

// Non-preemptive list packing: at the start and at every completion the list is rescanned in order and
// each waiting item that fits is started. Returns start times.
std::vector<Rational> greedy_pack_interval(const std::vector<PackItem>& items, const Rational& capacity,
                                           const Rational& start);

// Makespan of a packing relative to the nominal length, and 2 max(1, v) with v the normalized volume.
struct PackBound {
  Rational normalized_makespan;
  Rational bound;
  bool ok() const { return normalized_makespan <= bound; }
};
PackBound pack_bound(const std::vector<PackItem>& items, const std::vector<Rational>& starts, const Rational& capacity,
                     const Rational& start, const Rational& nominal_length);

}  // namespace synchpack
