#pragma once

#include "synchpack/model.hpp"

#include <cstdint>
#include <stdexcept>

namespace synchpack {

struct OracleGuardError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OracleLimits {
  static constexpr int max_tasks = 4;
  static constexpr std::int64_t max_horizon = 10;
  static constexpr int max_machines = 3;
};

struct OptResult {
  Rational objective;
  Schedule schedule;
};

// Exact optimum over the schedule class selected by `mode`.
// Non-preemptive: enumeration of machines and integer start slots below `horizon`.
// Preemptive classes: for every completion order (and, for fixed-machine, every machine
// assignment) an exact rational LP over machine configurations between consecutive completions.
OptResult brute_force_opt(const Instance& instance, ScheduleMode mode, std::int64_t horizon);

}  // namespace synchpack
