#include "synchpack/model.hpp"

#include <algorithm>
#include <sstream>

namespace synchpack {

std::vector<int> Task::placement() const {
  std::vector<int> out;
  out.reserve(proc.size());
  for (const auto& [machine, p] : proc) out.push_back(machine);
  return out;
}

std::int64_t Task::proc_on(int machine) const {
  auto it = proc.find(machine);
  if (it == proc.end()) throw std::out_of_range("machine " + std::to_string(machine) + " not in placement set");
  return it->second;
}

Rational Task::volume_on(int machine) const { return size * proc_on(machine); }

Instance::Instance(std::vector<Rational> machines, std::vector<Job> jobs)
    : machines_(std::move(machines)), jobs_(std::move(jobs)) {
  for (std::size_t i = 0; i < machines_.size(); ++i)
    if (machines_[i] <= 0) throw InstanceError("machine " + std::to_string(i) + " has non-positive capacity");
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    const Job& job = jobs_[j];
    std::string where = "job " + std::to_string(j);
    if (job.weight <= 0) throw InstanceError(where + " has non-positive weight");
    if (job.arrival < 0) throw InstanceError(where + " has negative arrival time");
    if (job.tasks.empty()) throw InstanceError(where + " has no tasks");
    for (std::size_t k = 0; k < job.tasks.size(); ++k) {
      const Task& t = job.tasks[k];
      std::string twhere = where + " task " + std::to_string(k);
      if (t.size <= 0) throw InstanceError(twhere + " has non-positive size");
      if (t.proc.empty()) throw InstanceError(twhere + " has an empty placement set");
      bool fits_somewhere = false;
      for (const auto& [machine, p] : t.proc) {
        if (machine < 0 || machine >= static_cast<int>(machines_.size()))
          throw InstanceError(twhere + " references unknown machine " + std::to_string(machine));
        if (p < 1) throw InstanceError(twhere + " has processing time below one slot");
        if (t.size <= machines_[machine]) fits_somewhere = true;
      }
      if (!fits_somewhere) throw UnschedulableTaskError(twhere + " exceeds the capacity of every placement machine");
      ++task_count_;
    }
  }
}

std::vector<TaskId> Instance::task_ids() const {
  std::vector<TaskId> ids;
  ids.reserve(task_count_);
  for (int j = 0; j < job_count(); ++j)
    for (int k = 0; k < static_cast<int>(jobs_[j].tasks.size()); ++k) ids.push_back({j, k});
  return ids;
}

bool Instance::usable(TaskId id, int machine) const {
  const Task& t = task(id);
  return t.placeable_on(machine) && t.size <= machines_.at(machine);
}

std::vector<int> Instance::usable_machines(TaskId id) const {
  std::vector<int> out;
  for (const auto& [machine, p] : task(id).proc)
    if (task(id).size <= machines_[machine]) out.push_back(machine);
  return out;
}

bool Instance::singleton_placement() const {
  for (const Job& job : jobs_)
    for (const Task& t : job.tasks)
      if (t.proc.size() != 1) return false;
  return true;
}

std::string to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::PreemptiveMigratory: return "preemptive-migratory";
    case ScheduleMode::PreemptiveFixed: return "preemptive-fixed";
    case ScheduleMode::NonPreemptive: return "non-preemptive";
  }
  return "unknown";
}

ScheduleMode parse_schedule_mode(const std::string& name) {
  if (name == "preemptive-migratory") return ScheduleMode::PreemptiveMigratory;
  if (name == "preemptive-fixed") return ScheduleMode::PreemptiveFixed;
  if (name == "non-preemptive") return ScheduleMode::NonPreemptive;
  throw std::invalid_argument("unknown schedule mode '" + name + "'");
}

Schedule Schedule::empty_for(const Instance& instance, ScheduleMode mode) {
  Schedule s;
  s.mode = mode;
  s.segments.resize(instance.job_count());
  for (int j = 0; j < instance.job_count(); ++j) s.segments[j].resize(instance.jobs()[j].tasks.size());
  return s;
}

void normalize_segments(Schedule& schedule) {
  for (auto& job : schedule.segments) {
    for (auto& segs : job) {
      std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
      std::vector<Segment> merged;
      for (Segment& s : segs) {
        if (s.end <= s.start) continue;
        if (!merged.empty() && merged.back().machine == s.machine && merged.back().end == s.start)
          merged.back().end = s.end;
        else
          merged.push_back(std::move(s));
      }
      segs = std::move(merged);
    }
  }
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PackingViolation: return "PackingViolation";
    case ViolationKind::PlacementViolation: return "PlacementViolation";
    case ViolationKind::ProcessingIncomplete: return "ProcessingIncomplete";
    case ViolationKind::SimultaneityViolation: return "SimultaneityViolation";
    case ViolationKind::ModeViolation: return "ModeViolation";
  }
  return "Unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

std::int64_t horizon_upper_bound(const Instance& instance) {
  std::vector<std::int64_t> load(instance.machine_count(), 0);
  for (const Job& job : instance.jobs())
    for (const Task& t : job.tasks)
      for (const auto& [machine, p] : t.proc) load[machine] += p;
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

namespace {

std::string task_label(TaskId id) {
  return "job " + std::to_string(id.job) + " task " + std::to_string(id.task);
}

void check_structure(const Instance& instance, const Schedule& schedule) {
  if (static_cast<int>(schedule.segments.size()) != instance.job_count())
    throw ScheduleStructureError("schedule has " + std::to_string(schedule.segments.size()) + " jobs, instance has " +
                                 std::to_string(instance.job_count()));
  for (int j = 0; j < instance.job_count(); ++j) {
    if (schedule.segments[j].size() != instance.jobs()[j].tasks.size())
      throw ScheduleStructureError("task count mismatch for job " + std::to_string(j));
    for (const auto& segs : schedule.segments[j])
      for (const Segment& s : segs) {
        if (s.machine < 0 || s.machine >= instance.machine_count())
          throw ScheduleStructureError("unknown machine " + std::to_string(s.machine) + " in job " + std::to_string(j));
        if (!(s.start < s.end))
          throw ScheduleStructureError("segment with start >= end in job " + std::to_string(j));
      }
  }
}

struct HeightEvent {
  Rational time;
  Rational delta;
};

}  // namespace

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule) {
  check_structure(instance, schedule);
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) { report.violations.push_back({kind, std::move(detail)}); };

  std::vector<std::vector<HeightEvent>> events(instance.machine_count());
  for (TaskId id : instance.task_ids()) {
    const Task& task = instance.task(id);
    const auto& segs = schedule.of(id);

    Rational processed = 0;
    bool placement_ok = true;
    for (const Segment& s : segs) {
      if (!task.placeable_on(s.machine)) {
        placement_ok = false;
        add(ViolationKind::PlacementViolation,
            task_label(id) + " runs on machine " + std::to_string(s.machine) + " outside its placement set");
        continue;
      }
      processed += (s.end - s.start) / task.proc_on(s.machine);
      events[s.machine].push_back({s.start, task.size});
      events[s.machine].push_back({s.end, -task.size});
    }
    if (placement_ok && processed != 1)
      add(ViolationKind::ProcessingIncomplete, task_label(id) + " processed fraction " + to_string(processed));

    std::vector<const Segment*> order;
    for (const Segment& s : segs) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const Segment* a, const Segment* b) { return a->start < b->start; });
    for (std::size_t q = 1; q < order.size(); ++q)
      if (order[q]->start < order[q - 1]->end) {
        add(ViolationKind::SimultaneityViolation,
            task_label(id) + " overlaps itself at time " + to_string(order[q]->start));
        break;
      }

    if (schedule.mode == ScheduleMode::NonPreemptive && segs.size() != 1)
      add(ViolationKind::ModeViolation,
          task_label(id) + " has " + std::to_string(segs.size()) + " segments in non-preemptive mode");
    if (schedule.mode == ScheduleMode::PreemptiveFixed)
      for (const Segment& s : segs)
        if (s.machine != segs.front().machine) {
          add(ViolationKind::ModeViolation, task_label(id) + " migrates in fixed-machine mode");
          break;
        }
  }

  for (int i = 0; i < instance.machine_count(); ++i) {
    auto& ev = events[i];
    // Half-open segments: releases at time t happen before starts at t.
    std::sort(ev.begin(), ev.end(), [](const HeightEvent& a, const HeightEvent& b) {
      if (a.time != b.time) return a.time < b.time;
      return a.delta < b.delta;
    });
    Rational height = 0;
    for (const HeightEvent& e : ev) {
      height += e.delta;
      if (height > instance.capacity(i)) {
        add(ViolationKind::PackingViolation, "machine " + std::to_string(i) + " height " + to_string(height) +
                                                 " exceeds capacity " + to_string(instance.capacity(i)) +
                                                 " at time " + to_string(e.time));
        break;
      }
    }
  }
  return report;
}

std::vector<Rational> completion_times(const Instance& instance, const Schedule& schedule) {
  check_structure(instance, schedule);
  std::vector<Rational> completion(instance.job_count(), Rational(0));
  for (TaskId id : instance.task_ids())
    for (const Segment& s : schedule.of(id))
      if (completion[id.job] < s.end) completion[id.job] = s.end;
  return completion;
}

Rational weighted_objective(const Instance& instance, const std::vector<Rational>& completion) {
  if (static_cast<int>(completion.size()) != instance.job_count())
    throw std::invalid_argument("completion map does not cover all jobs");
  Rational total = 0;
  for (int j = 0; j < instance.job_count(); ++j) total += instance.jobs()[j].weight * completion[j];
  return total;
}

Rational schedule_objective(const Instance& instance, const Schedule& schedule) {
  return weighted_objective(instance, completion_times(instance, schedule));
}

}  // namespace synchpack
