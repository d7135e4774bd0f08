#include "helpers.hpp"
#include "synchpack/lpcore.hpp"
#include "synchpack/mapping.hpp"

#include <doctest.h>

using namespace synchpack;
using namespace testutil;

namespace {

std::vector<Rational> per_interval(const std::vector<ZEntry>& entries, int intervals) {
  std::vector<Rational> out(intervals, Rational(0));
  for (const ZEntry& e : entries) out.at(e.interval) += e.value;
  return out;
}

ZTensor single(std::vector<std::string> values) {
  std::vector<ZEntry> entries;
  for (std::size_t l = 0; l < values.size(); ++l)
    if (q(values[l]) > 0) entries.push_back({0, static_cast<int>(l), q(values[l])});
  return {{entries}};
}

}  // namespace

TEST_CASE("stretching z") {
  CHECK(per_interval(stretch_z(single({"1/2", "1/2"}), q("1/2"))[0][0], 2) == std::vector<Rational>{1, 0});
  CHECK(per_interval(stretch_z(single({"1/4", "1/4", "1/2"}), q("1/2"))[0][0], 3) ==
        std::vector<Rational>{q("1/2"), q("1/2"), 0});
  ZTensor z = single({"1/4", "1/4", "1/2"});
  CHECK(per_interval(stretch_z(z, Rational(1))[0][0], 3) == per_interval(z[0][0], 3));
  CHECK_THROWS(stretch_z(z, Rational(0)));
}

TEST_CASE("stretching keeps each machine's share") {
  ZTensor z{{{{0, 0, q("1/6")}, {0, 2, q("1/6")}, {1, 1, q("1/3")}, {1, 3, q("1/3")}}}};
  ZTensor s = stretch_z(z, q("2/5"));
  Rational m0 = 0, m1 = 0;
  for (const ZEntry& e : s[0][0]) (e.machine == 0 ? m0 : m1) += e.value;
  CHECK(m0 == q("1/3"));
  CHECK(m1 == q("2/3"));
}

TEST_CASE("mapping graph fills copies in volume order") {
  // A has the larger volume, so it is placed first.
  Instance inst(caps({"1"}), {job({task("1", {{0, 2}})}), job({task("1", {{0, 1}})})});
  ZTensor zbar{{{{0, 0, q("7/10")}, {0, 1, q("3/10")}}}, {{{0, 0, q("3/5")}, {0, 1, q("2/5")}}}};
  MappingGraph g = build_mapping_graph(inst, zbar);
  CHECK(g.copies.at({0, 0}) == 2);
  CHECK(g.copies.at({0, 1}) == 1);
  std::vector<std::tuple<int, int, Rational>> interval0;
  for (const MappingEdge& e : g.edges)
    if (e.interval == 0) interval0.emplace_back(e.task.job, e.copy, e.weight);
  CHECK(interval0 == std::vector<std::tuple<int, int, Rational>>{{0, 0, q("7/10")}, {1, 0, q("3/10")}, {1, 1, q("3/10")}});

  for (TaskId id : g.tasks) {
    Rational s = 0;
    for (const MappingEdge& e : g.edges)
      if (e.task == id) s += e.weight;
    CHECK(s == 1);
  }
}

TEST_CASE("copy filling matches the worked example") {
  std::vector<Rational> l_copies{1, q("7/10"), 0};
  std::size_t l_cursor = 1;
  auto a = fill_copies(l_copies, l_cursor, q("2/5"));
  CHECK(a == std::vector<std::pair<int, Rational>>{{1, q("3/10")}, {2, q("1/10")}});

  std::vector<Rational> lp_copies{q("9/10"), 0};
  std::size_t lp_cursor = 0;
  auto b = fill_copies(lp_copies, lp_cursor, q("3/10"));
  CHECK(b == std::vector<std::pair<int, Rational>>{{0, q("1/10")}, {1, q("1/5")}});
}

TEST_CASE("integral matching") {
  Instance two(caps({"1"}), {job({task("1", {{0, 1}})}), job({task("1", {{0, 1}})})});
  SUBCASE("already integral") {
    MappingGraph g;
    g.tasks = two.task_ids();
    g.copies[{0, 0}] = 2;
    g.edges = {{{0, 0}, 0, 0, 1, Rational(1)}, {{1, 0}, 0, 0, 0, Rational(1)}};
    IntervalAssignment a = integral_matching(g);
    CHECK(a.of_task.at({0, 0}).copy == 1);
    CHECK(a.of_task.at({1, 0}).copy == 0);
    CHECK(matching_is_valid(g, a));
  }
  SUBCASE("all halves") {
    MappingGraph g;
    g.tasks = two.task_ids();
    g.copies[{0, 0}] = 2;
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 2; ++c) g.edges.push_back({{j, 0}, 0, 0, c, q("1/2")});
    IntervalAssignment a = integral_matching(g);
    CHECK(a.of_task.at({0, 0}).copy != a.of_task.at({1, 0}).copy);
    CHECK(matching_is_valid(g, a));
  }
  SUBCASE("worked example task avoids the saturated copy") {
    // Left nodes: the example task T plus filler tasks that saturate copy 0 of (0, 0) and part
    // of the other copies, reproducing copy loads (1, 7/10) and (9/10) before T arrives.
    Instance inst(caps({"1"}), {job({task("1", {{0, 1}})}), job({task("1", {{0, 1}})}), job({task("1", {{0, 1}})}),
                                job({task("1", {{0, 1}})})});
    MappingGraph g;
    g.tasks = inst.task_ids();
    g.copies[{0, 0}] = 3;
    g.copies[{0, 1}] = 2;
    g.copies[{0, 2}] = 1;
    g.edges = {
        {{0, 0}, 0, 0, 0, Rational(1)},
        {{1, 0}, 0, 0, 1, q("7/10")},  {{1, 0}, 0, 1, 0, q("3/10")},
        {{2, 0}, 0, 1, 0, q("3/5")},   {{2, 0}, 0, 0, 2, q("2/5")},
        {{3, 0}, 0, 0, 1, q("3/10")},  {{3, 0}, 0, 0, 2, q("1/10")},
        {{3, 0}, 0, 1, 0, q("1/10")},  {{3, 0}, 0, 1, 1, q("1/5")},   {{3, 0}, 0, 2, 0, q("3/10")},
    };
    // Sanity: every left node sums to one and no copy exceeds one.
    std::map<std::tuple<int, int, int>, Rational> load;
    for (const MappingEdge& e : g.edges) load[{e.machine, e.interval, e.copy}] += e.weight;
    for (const auto& [k, v] : load) REQUIRE(v <= 1);
    IntervalAssignment a = integral_matching(g);
    CHECK(matching_is_valid(g, a));
    Placement p = a.of_task.at({3, 0});
    CHECK_FALSE((p.interval == 0 && p.copy == 0));
  }
}

TEST_CASE("invalid graphs are refused") {
  Instance one(caps({"1"}), {job({task("1", {{0, 1}})})});
  MappingGraph g;
  g.tasks = one.task_ids();
  g.copies[{0, 0}] = 1;
  g.edges = {{{0, 0}, 0, 0, 0, q("1/2")}};
  CHECK_THROWS_AS(integral_matching(g), MatchingError);
}

TEST_CASE("volume bound on an empty interval is trivially met") {
  Instance inst(caps({"2"}), {job({task("1", {{0, 1}})})});
  IntervalGrid grid = build_intervals(2, Rational(1));
  ZTensor zbar{{{{0, 0, Rational(1)}}}};
  IntervalAssignment a;
  a.of_task[{0, 0}] = {0, 0, 0};
  a.tasks_in[{0, 0}] = {{0, 0}};
  std::vector<VolumeCheck> checks = check_volume_bound(inst, a, zbar, grid, Rational(1));
  bool saw_empty = false;
  for (const VolumeCheck& c : checks) {
    CHECK(c.ok());
    if (c.interval == 1) {
      saw_empty = true;
      CHECK(c.assigned_volume == 0);
    }
  }
  CHECK(saw_empty);
}
