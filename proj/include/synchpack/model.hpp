#pragma once

#include "synchpack/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace synchpack {

struct InstanceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A task whose size exceeds the capacity of every machine it may run on.
struct UnschedulableTaskError : InstanceError {
  using InstanceError::InstanceError;
};

// An algorithm was handed an instance outside its supported class.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ScheduleStructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TaskId {
  int job = 0;
  int task = 0;
  auto operator<=>(const TaskId&) const = default;
};

struct Task {
  Rational size;
  std::map<int, std::int64_t> proc;  // machine -> processing slots; keys form the placement set

  std::vector<int> placement() const;
  bool placeable_on(int machine) const { return proc.count(machine) != 0; }
  std::int64_t proc_on(int machine) const;
  Rational volume_on(int machine) const;
};

struct Job {
  Rational weight{1};
  Rational arrival{0};
  std::vector<Task> tasks;
};

class Instance {
 public:
  Instance() = default;
  // Throws InstanceError / UnschedulableTaskError when invariants fail.
  Instance(std::vector<Rational> machines, std::vector<Job> jobs);

  const std::vector<Rational>& machines() const { return machines_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  int machine_count() const { return static_cast<int>(machines_.size()); }
  int job_count() const { return static_cast<int>(jobs_.size()); }
  int task_count() const { return task_count_; }
  const Task& task(TaskId id) const { return jobs_.at(id.job).tasks.at(id.task); }
  const Rational& capacity(int machine) const { return machines_.at(machine); }

  std::vector<TaskId> task_ids() const;
  // Placement machines whose capacity admits the task.
  std::vector<int> usable_machines(TaskId id) const;
  bool usable(TaskId id, int machine) const;
  bool singleton_placement() const;

 private:
  std::vector<Rational> machines_;
  std::vector<Job> jobs_;
  int task_count_ = 0;
};

enum class ScheduleMode { PreemptiveMigratory, PreemptiveFixed, NonPreemptive };

std::string to_string(ScheduleMode mode);
ScheduleMode parse_schedule_mode(const std::string& name);

struct Segment {
  int machine = 0;
  Rational start;
  Rational end;
};

struct Schedule {
  ScheduleMode mode = ScheduleMode::NonPreemptive;
  std::vector<std::vector<std::vector<Segment>>> segments;  // [job][task]

  static Schedule empty_for(const Instance& instance, ScheduleMode mode);
  std::vector<Segment>& of(TaskId id) { return segments.at(id.job).at(id.task); }
  const std::vector<Segment>& of(TaskId id) const { return segments.at(id.job).at(id.task); }
};

// Sorts each task's segments by start and merges touching pieces on the same machine.
void normalize_segments(Schedule& schedule);

enum class ViolationKind {
  PackingViolation,
  PlacementViolation,
  ProcessingIncomplete,
  SimultaneityViolation,
  ModeViolation
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

std::int64_t horizon_upper_bound(const Instance& instance);

// Throws ScheduleStructureError when the schedule does not match the instance shape.
ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule);

std::vector<Rational> completion_times(const Instance& instance, const Schedule& schedule);
Rational weighted_objective(const Instance& instance, const std::vector<Rational>& completion);
Rational schedule_objective(const Instance& instance, const Schedule& schedule);

}  // namespace synchpack
