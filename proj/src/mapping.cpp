#include "synchpack/mapping.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace synchpack {

ZTensor stretch_z(const ZTensor& z, const Rational& lambda) {
  if (lambda <= 0 || lambda > 1) throw std::invalid_argument("lambda must lie in (0, 1]");
  ZTensor out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    out[j].resize(z[j].size());
    for (std::size_t k = 0; k < z[j].size(); ++k) {
      const auto& entries = z[j][k];  // ordered by (machine, interval)
      std::size_t q = 0;
      while (q < entries.size()) {
        std::size_t r = q;
        Rational total = 0;
        while (r < entries.size() && entries[r].machine == entries[q].machine) total += entries[r++].value;
        Rational before = 0;  // sum of z / lambda over earlier intervals
        for (std::size_t e = q; e < r; ++e) {
          Rational scaled = entries[e].value / lambda;
          Rational value = before + scaled < total ? scaled : max_rational(Rational(0), total - before);
          before += scaled;
          if (value > 0) out[j][k].push_back({entries[e].machine, entries[e].interval, value});
        }
        q = r;
      }
    }
  }
  return out;
}

std::vector<std::pair<int, Rational>> fill_copies(std::vector<Rational>& copy_load, std::size_t& cursor,
                                                  Rational amount) {
  std::vector<std::pair<int, Rational>> out;
  while (amount > 0) {
    if (cursor >= copy_load.size()) throw std::logic_error("ran out of interval copies");
    Rational w = min_rational(amount, 1 - copy_load[cursor]);
    out.emplace_back(static_cast<int>(cursor), w);
    copy_load[cursor] += w;
    amount -= w;
    if (copy_load[cursor] == 1) ++cursor;
  }
  return out;
}

MappingGraph build_mapping_graph(const Instance& instance, const ZTensor& zbar) {
  MappingGraph g;
  g.tasks = instance.task_ids();
  // (machine, interval) -> total mass
  std::map<std::pair<int, int>, Rational> mass;
  for (TaskId id : g.tasks)
    for (const ZEntry& e : zbar.at(id.job).at(id.task)) mass[{e.machine, e.interval}] += e.value;

  std::map<std::pair<int, int>, std::vector<Rational>> load;
  std::map<std::pair<int, int>, std::size_t> cursor;
  for (const auto& [key, m] : mass) {
    int count = static_cast<int>(ceil_to_int(m));
    g.copies[key] = count;
    load[key].assign(count, Rational(0));
    cursor[key] = 0;
  }

  for (int i = 0; i < instance.machine_count(); ++i) {
    std::vector<TaskId> order;
    for (TaskId id : g.tasks)
      for (const ZEntry& e : zbar.at(id.job).at(id.task))
        if (e.machine == i) {
          order.push_back(id);
          break;
        }
    std::stable_sort(order.begin(), order.end(), [&](TaskId a, TaskId b) {
      return instance.task(a).volume_on(i) > instance.task(b).volume_on(i);
    });
    for (TaskId id : order)
      for (const ZEntry& e : zbar.at(id.job).at(id.task)) {
        if (e.machine != i) continue;
        std::pair<int, int> key{i, e.interval};
        for (const auto& [copy, w] : fill_copies(load[key], cursor[key], e.value))
          g.edges.push_back({id, i, e.interval, copy, w});
      }
  }
  return g;
}

namespace {

struct Node {
  bool left;
  int index;
  bool operator<(const Node& o) const { return std::tie(left, index) < std::tie(o.left, o.index); }
  bool operator==(const Node& o) const { return left == o.left && index == o.index; }
};

}  // namespace

IntervalAssignment integral_matching(const MappingGraph& graph) {
  std::map<TaskId, int> left_index;
  for (std::size_t t = 0; t < graph.tasks.size(); ++t) left_index[graph.tasks[t]] = static_cast<int>(t);
  std::map<std::tuple<int, int, int>, int> right_index;
  std::vector<std::tuple<int, int, int>> right_key;
  for (const auto& [key, count] : graph.copies)
    for (int c = 0; c < count; ++c) {
      right_index[{key.first, key.second, c}] = static_cast<int>(right_key.size());
      right_key.push_back({key.first, key.second, c});
    }

  const std::size_t m = graph.edges.size();
  std::vector<int> eleft(m), eright(m);
  std::vector<Rational> w(m);
  std::vector<Rational> left_sum(graph.tasks.size(), Rational(0)), right_sum(right_key.size(), Rational(0));
  for (std::size_t e = 0; e < m; ++e) {
    const MappingEdge& ed = graph.edges[e];
    auto li = left_index.find(ed.task);
    auto ri = right_index.find({ed.machine, ed.interval, ed.copy});
    if (li == left_index.end() || ri == right_index.end()) throw MatchingError("edge references an unknown node");
    if (ed.weight <= 0 || ed.weight > 1) throw MatchingError("edge weight outside (0, 1]");
    eleft[e] = li->second;
    eright[e] = ri->second;
    w[e] = ed.weight;
    left_sum[eleft[e]] += w[e];
    right_sum[eright[e]] += w[e];
  }
  for (const Rational& s : left_sum)
    if (s != 1) throw MatchingError("a task's edge weights do not sum to one");
  for (const Rational& s : right_sum)
    if (s > 1) throw MatchingError("a copy carries more than unit weight");

  auto fractional = [&](std::size_t e) { return w[e] > 0 && w[e] < 1; };
  std::vector<std::vector<std::size_t>> adj_left(graph.tasks.size()), adj_right(right_key.size());
  for (std::size_t e = 0; e < m; ++e) {
    adj_left[eleft[e]].push_back(e);
    adj_right[eright[e]].push_back(e);
  }
  auto other = [&](const Node& n, std::size_t e) { return n.left ? Node{false, eright[e]} : Node{true, eleft[e]}; };
  auto incident = [&](const Node& n) -> const std::vector<std::size_t>& {
    return n.left ? adj_left[n.index] : adj_right[n.index];
  };

  // Walk along fractional edges from `from`; stops on a repeated node (cycle) or a dead end.
  // Returns the edge sequence and the index in `nodes` where a cycle closes (or -1).
  auto walk = [&](Node from, std::size_t first_edge, std::vector<Node>& nodes, std::vector<std::size_t>& path) {
    nodes = {from};
    path.clear();
    std::map<Node, int> seen{{from, 0}};
    std::size_t e = first_edge;
    while (true) {
      path.push_back(e);
      Node next = other(nodes.back(), e);
      if (auto it = seen.find(next); it != seen.end()) return it->second;
      seen[next] = static_cast<int>(nodes.size());
      nodes.push_back(next);
      std::optional<std::size_t> step;
      for (std::size_t f : incident(next))
        if (f != e && fractional(f)) {
          step = f;
          break;
        }
      if (!step) return -1;
      e = *step;
    }
  };

  std::vector<Node> nodes;
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < m; ++start) {
    while (fractional(start)) {
      int closes = walk(Node{true, eleft[start]}, start, nodes, path);
      std::vector<std::size_t> chain;
      if (closes >= 0) {
        chain.assign(path.begin() + closes, path.end());
      } else {
        // Dead end reached: walk back from it to obtain a maximal path (or a cycle).
        Node end = nodes.back();
        closes = walk(end, path.back(), nodes, path);
        if (closes >= 0)
          chain.assign(path.begin() + closes, path.end());
        else
          chain = path;
      }
      // Alternate +theta / -theta; theta is the largest step keeping all weights in [0, 1].
      std::optional<Rational> theta;
      for (std::size_t q = 0; q < chain.size(); ++q) {
        Rational room = q % 2 == 0 ? 1 - w[chain[q]] : w[chain[q]];
        if (!theta || room < *theta) theta = room;
      }
      for (std::size_t q = 0; q < chain.size(); ++q) w[chain[q]] += q % 2 == 0 ? *theta : Rational(-*theta);
    }
  }

  IntervalAssignment out;
  for (std::size_t e = 0; e < m; ++e) {
    if (w[e] != 1) continue;
    const MappingEdge& ed = graph.edges[e];
    if (out.of_task.count(ed.task)) throw std::logic_error("task matched twice");
    out.of_task[ed.task] = {ed.machine, ed.interval, ed.copy};
  }
  if (out.of_task.size() != graph.tasks.size()) throw std::logic_error("matching left a task unassigned");
  for (const auto& [task, p] : out.of_task) out.tasks_in[{p.machine, p.interval}].push_back(task);
  return out;
}

bool matching_is_valid(const MappingGraph& graph, const IntervalAssignment& assignment) {
  if (assignment.of_task.size() != graph.tasks.size()) return false;
  std::set<std::tuple<int, int, int>> used;
  for (TaskId id : graph.tasks) {
    auto it = assignment.of_task.find(id);
    if (it == assignment.of_task.end()) return false;
    const Placement& p = it->second;
    bool positive = std::any_of(graph.edges.begin(), graph.edges.end(), [&](const MappingEdge& e) {
      return e.task == id && e.machine == p.machine && e.interval == p.interval && e.copy == p.copy && e.weight > 0;
    });
    if (!positive) return false;
    if (!used.insert({p.machine, p.interval, p.copy}).second) return false;
  }
  return true;
}

std::vector<VolumeCheck> check_volume_bound(const Instance& instance, const IntervalAssignment& assignment,
                                            const ZTensor& zbar, const IntervalGrid& grid, const Rational& lambda) {
  std::vector<VolumeCheck> out;
  for (int i = 0; i < instance.machine_count(); ++i)
    for (int l = 0; l < grid.size(); ++l) {
      VolumeCheck c{i, l, Rational(0), grid.d[l] / lambda * instance.capacity(i)};
      if (auto it = assignment.tasks_in.find({i, l}); it != assignment.tasks_in.end())
        for (TaskId id : it->second) c.assigned_volume += instance.task(id).volume_on(i);
      for (TaskId id : instance.task_ids())
        for (const ZEntry& e : zbar.at(id.job).at(id.task))
          if (e.machine == i && e.interval == l) c.bound += instance.task(id).volume_on(i) * e.value;
      out.push_back(c);
    }
  return out;
}

}  // namespace synchpack
