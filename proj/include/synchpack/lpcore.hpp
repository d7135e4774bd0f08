#pragma once

#include "synchpack/lp_model.hpp"
#include "synchpack/lpsolve.hpp"
#include "synchpack/model.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace synchpack {

// Geometric time grid: interval l covers (d_{l-1}, d_l] with d_{-1} = 0.
struct IntervalGrid {
  Rational epsilon;
  int L = 0;
  std::vector<Rational> d;      // d_0 .. d_L
  std::vector<Rational> delta;  // interval lengths

  int size() const { return L + 1; }
  Rational left(int l) const { return l == 0 ? Rational(0) : d.at(l - 1); }
};

IntervalGrid build_intervals(std::int64_t horizon, const Rational& epsilon);

// Rows: K(2L+3) + M(L+1) + 2N; columns: P(L+1) + N(L+1) + N, where K counts tasks
// and P counts (task, usable machine) pairs.
lp::LpModel build_lp1(const Instance& instance, const IntervalGrid& grid);

// LP1 plus z = 0 whenever the processing time exceeds the interval end point.
lp::LpModel build_lp2(const Instance& instance, const IntervalGrid& grid);

// Singleton placements, at most one task per job per machine.
// Rows: 2K + N(N-1)/2; columns: N + N(N-1).
lp::LpModel build_lp3(const Instance& instance);

struct InfeasibleModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FractionCorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZEntry {
  int machine = 0;
  int interval = 0;
  Rational value;
};

// [job][task] -> positive entries ordered by (machine, interval).
using ZTensor = std::vector<std::vector<std::vector<ZEntry>>>;

struct FractionAssignment {
  ZTensor z;
  std::vector<std::vector<Rational>> x;             // [job][interval]
  std::vector<Rational> completion;                 // per job: interval-model completion time
  std::map<std::pair<int, int>, Rational> delta;    // (j, j') -> fraction of "j before j'"
  double solver_objective = 0.0;

  const std::vector<ZEntry>& of(TaskId id) const { return z.at(id.job).at(id.task); }
};

struct CleaningOptions {
  double tolerance = 1e-6;
  std::int64_t denominator = std::int64_t{1} << 20;
};

// Cleans an LP1/LP2 (grid given) or LP3 (grid null) solution into exact rationals.
FractionAssignment extract_fractions(const Instance& instance, const lp::LpModel& model,
                                     const lp::LpSolution& solution, const IntervalGrid* grid,
                                     const CleaningOptions& options = {});

std::string to_string_key(const lp::VarKey& key);

}  // namespace synchpack
