#pragma once

#include "synchpack/model.hpp"

#include <vector>

namespace synchpack {

// Per machine, tasks in descending weight/volume order, started at the first time with enough free
// capacity; a task bigger than half the machine that would wait too long is instead run alone,
// pausing and postponing everything unfinished at that moment. Singleton placements only.
Schedule psrs(const Instance& instance);

// Smith-ratio delay constant for large tasks in psrs.
Rational psrs_delay_constant();

struct TetrisScore {
  TaskId task;
  int machine = 0;
  Rational weight_term;  // w * a
  Rational volume_term;  // w * eps / remaining job volume
  Rational score;        // (weight_term + volume_term), divided by alpha on remote machines
};

// remaining[j][k] is the unprocessed fraction of each task; `waiting` lists tasks eligible to start.
std::vector<TetrisScore> tetris_scores(const Instance& instance, const std::vector<std::vector<Rational>>& remaining,
                                       const std::vector<TaskId>& waiting, const Rational& alpha);

// Local machines: placement machines with the task's shortest processing time; others are remote.
std::vector<int> local_machines(const Instance& instance, TaskId id);

Schedule tetris(const Instance& instance, bool preemptive, const Rational& alpha);

// Join-the-shortest-queue routing over local queues and one shared remote queue, MaxWeight
// service on backlog volume, greedy non-preemptive packing. Honors job arrival times.
Schedule jsq_mw(const Instance& instance);

}  // namespace synchpack
