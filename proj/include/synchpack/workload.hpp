#pragma once

#include "synchpack/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace synchpack {

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class WeightMode { Equal, Random, Priority };
WeightMode parse_weight_mode(const std::string& text);
std::string to_string(WeightMode mode);

constexpr int kPriorityLevels = 9;

struct TraceOptions {
  std::vector<Rational> machines;  // capacities; rows without a machine may run on any of them
  std::size_t max_tasks = 0;       // drop jobs with more tasks than this; 0 keeps all
  WeightMode weights = WeightMode::Priority;
  std::uint64_t seed = 0;          // used by WeightMode::Random
};

// CSV with header job_id,task_id,arrival_time,size,duration,priority[,machine]. Durations are
// rounded up to whole slots; jobs appear in order of first occurrence and arrive at their
// earliest row. Priority weights are the rank (1-based) of the job's priority among the
// distinct values seen, capped at kPriorityLevels.
Instance load_trace(const std::string& path, const TraceOptions& options);
Instance parse_trace(const std::string& csv_text, const TraceOptions& options);

// Each task gets k_local machines (among those it fits on) at its shortest processing time and
// n_remote further machines at that time times alpha, rounded up.
Instance augment_placement(const Instance& instance, int k_local, const Rational& alpha, int n_remote,
                           std::uint64_t seed);

struct SynthParams {
  int n_jobs = 10;
  int min_tasks = 1;
  int max_tasks = 5;
  int machines = 5;
  Rational capacity{1};
  int size_steps = 10;             // sizes drawn from {1..size_steps}/size_steps of capacity
  int min_size_step = 1;
  int max_size_step = 10;
  std::int64_t min_proc = 1;
  std::int64_t max_proc = 5;
  int placement_size = 1;          // machines per task, capped at the machine count
  bool uniform_proc = false;       // same processing time on every placement machine
  bool distinct_machines = false;  // single placement with all tasks of a job on different machines
  std::int64_t arrival_span = 0;   // arrivals uniform over integers in [0, span]
  WeightMode weights = WeightMode::Equal;
  std::uint64_t seed = 0;
};

Instance synth_instance(const SynthParams& params);

}  // namespace synchpack
