#pragma once

#include "synchpack/greedy.hpp"
#include "synchpack/io.hpp"
#include "synchpack/lpcore.hpp"
#include "synchpack/lpsolve.hpp"
#include "synchpack/mapping.hpp"
#include "synchpack/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace synchpack {

struct AlgoStats {
  std::string algorithm;
  std::optional<Rational> lp_objective;
  Rational objective;
  std::optional<Rational> ratio;
  std::optional<Rational> lambda;
  std::map<std::string, bool> lemma_checks;

  bool all_checks_pass() const;
};

Json stats_to_json(const AlgoStats& stats);

struct AlgoResult {
  Schedule schedule;
  AlgoStats stats;
};

struct Sp1Options {
  Rational epsilon{1, 2};
  std::optional<std::uint64_t> sample_seed;  // draw lambda from density 2x instead of derandomizing
  const lp::LpSolver* solver = nullptr;
};

struct Sp1Trace {
  IntervalGrid grid;
  FractionAssignment fractions;
  FractionSchedule packed;  // schedule before stretching
  std::vector<Rational> tau;
};

AlgoResult synchpack1(const Instance& instance, const Sp1Options& options = {}, Sp1Trace* trace = nullptr);

struct Sp2Options {
  bool compact = true;
  std::optional<std::uint64_t> sample_seed;
  const lp::LpSolver* solver = nullptr;
};

struct Sp2Trace {
  IntervalGrid grid;
  FractionAssignment fractions;
  ZTensor zbar;
  MappingGraph graph;
  IntervalAssignment assignment;
  std::vector<VolumeCheck> volume_checks;
  std::vector<Rational> candidate_lambdas;
};

AlgoResult synchpack2(const Instance& instance, const Sp2Options& options = {}, Sp2Trace* trace = nullptr);

struct Sp3Trace {
  FractionAssignment ordering;
  std::vector<int> job_order;
};

AlgoResult synchpack3(const Instance& instance, const lp::LpSolver* solver = nullptr, Sp3Trace* trace = nullptr);

// Per machine, tasks in the given job order are packed from scratch at time 0 and at every
// completion; a task left out of the packing pauses and keeps its progress.
Schedule list_schedule_by_order(const Instance& instance, const std::vector<int>& job_order);

// Single sweep per machine in start order: each task moves to the earliest time not before the
// previous task's start at which it fits.
void compact_left(const Instance& instance, Schedule& schedule);

Rational sample_lambda(std::uint64_t seed);

}  // namespace synchpack
