#pragma once

#include "synchpack/lpcore.hpp"
#include "synchpack/model.hpp"

#include <map>
#include <utility>
#include <vector>

namespace synchpack {

// Moves each task's per-machine mass forward to earlier intervals after scaling by 1/lambda,
// keeping the per-machine total. Exact.
ZTensor stretch_z(const ZTensor& z, const Rational& lambda);

struct MappingEdge {
  TaskId task;
  int machine = 0;
  int interval = 0;
  int copy = 0;
  Rational weight;
};

struct MappingGraph {
  std::vector<TaskId> tasks;                    // left nodes
  std::map<std::pair<int, int>, int> copies;    // (machine, interval) -> number of copies
  std::vector<MappingEdge> edges;
};

// Fills the copies of one (machine, interval) with `amount`, starting at the first non-full copy.
// Returns (copy, weight) pairs and advances the cursor.
std::vector<std::pair<int, Rational>> fill_copies(std::vector<Rational>& copy_load, std::size_t& cursor,
                                                  Rational amount);

MappingGraph build_mapping_graph(const Instance& instance, const ZTensor& zbar);

struct Placement {
  int machine = 0;
  int interval = 0;
  int copy = 0;
};

struct IntervalAssignment {
  std::map<TaskId, Placement> of_task;
  std::map<std::pair<int, int>, std::vector<TaskId>> tasks_in;  // (machine, interval) -> tasks, (job, task) order
};

struct MatchingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rounds the fractional matching to an integral one supported on positive edges.
IntervalAssignment integral_matching(const MappingGraph& graph);

// True iff every task is matched along an edge of positive weight and every copy holds at most one task.
bool matching_is_valid(const MappingGraph& graph, const IntervalAssignment& assignment);

struct VolumeCheck {
  int machine = 0;
  int interval = 0;
  Rational assigned_volume;
  Rational bound;
  bool ok() const { return assigned_volume <= bound; }
};

// Assigned volume of (i, l) against d_l m_i / lambda + sum of v * zbar over tasks.
std::vector<VolumeCheck> check_volume_bound(const Instance& instance, const IntervalAssignment& assignment,
                                            const ZTensor& zbar, const IntervalGrid& grid, const Rational& lambda);

}  // namespace synchpack
