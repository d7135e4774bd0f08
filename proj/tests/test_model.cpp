#include "helpers.hpp"
#include "synchpack/io.hpp"
#include "synchpack/model.hpp"

#include <doctest.h>

using namespace synchpack;
using namespace testutil;

TEST_CASE("instance construction rejects invalid data") {
  CHECK_THROWS_AS(Instance(caps({"0"}), {job({task("1", {{0, 1}})})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("1", {{0, 1}})}, "0")}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("0", {{0, 1}})})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("1", {})})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("1", {{1, 1}})})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("1", {{0, 0}})})}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1"}), {job({task("1", {{0, 1}})}, "1", "-1")}), InstanceError);
  CHECK_THROWS_AS(Instance(caps({"1", "1/2"}), {job({task("2", {{0, 1}, {1, 1}})})}), UnschedulableTaskError);
}

TEST_CASE("usable machines exclude placement machines that are too small") {
  Instance inst(caps({"1", "1/2"}), {job({task("3/4", {{0, 2}, {1, 1}})})});
  CHECK(inst.usable_machines({0, 0}) == std::vector<int>{0});
  CHECK_FALSE(inst.singleton_placement());
  CHECK(inst.task({0, 0}).volume_on(0) == q("3/2"));
}

TEST_CASE("horizon_upper_bound") {
  CHECK(horizon_upper_bound(Instance(caps({"1"}), {job({task("1", {{0, 2}})}), job({task("1", {{0, 1}})})})) == 3);
  Instance two(caps({"1", "1"}), {job({task("1", {{0, 2}, {1, 3}}), task("1", {{0, 1}, {1, 1}})})});
  CHECK(horizon_upper_bound(two) == 4);
  CHECK(horizon_upper_bound(Instance(caps({"1"}), {})) == 0);
}

TEST_CASE("validate_schedule on worked examples") {
  SUBCASE("empty") {
    Instance empty(caps({"1"}), {});
    CHECK(validate_schedule(empty, Schedule::empty_for(empty, ScheduleMode::NonPreemptive)).ok());
  }
  SUBCASE("capacity exceeded") {
    Instance inst(caps({"1"}), {job({task("1", {{0, 1}})}), job({task("1", {{0, 1}})})});
    Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
    s.of({0, 0}).push_back(seg(0, "0", "1"));
    s.of({1, 0}).push_back(seg(0, "0", "1"));
    ValidationReport r = validate_schedule(inst, s);
    CHECK(r.has(ViolationKind::PackingViolation));
    CHECK_FALSE(r.ok());
  }
  SUBCASE("instance A, shortest job first") {
    Instance inst = instance_a();
    Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
    s.of({1, 0}).push_back(seg(0, "0", "1"));
    s.of({0, 0}).push_back(seg(0, "1", "3"));
    CHECK(validate_schedule(inst, s).ok());
    CHECK(completion_times(inst, s) == std::vector<Rational>{3, 1});
    CHECK(schedule_objective(inst, s) == 4);
  }
}

TEST_CASE("validate_schedule detects each violation kind") {
  Instance inst(caps({"1", "1"}), {job({task("1/2", {{0, 2}})}), job({task("1/2", {{0, 1}, {1, 1}})})});
  auto base = [&](ScheduleMode mode) {
    Schedule s = Schedule::empty_for(inst, mode);
    s.of({0, 0}).push_back(seg(0, "0", "2"));
    s.of({1, 0}).push_back(seg(1, "0", "1"));
    return s;
  };
  CHECK(validate_schedule(inst, base(ScheduleMode::NonPreemptive)).ok());

  Schedule placement = base(ScheduleMode::NonPreemptive);
  placement.of({0, 0})[0].machine = 1;
  CHECK(validate_schedule(inst, placement).has(ViolationKind::PlacementViolation));

  Schedule short_run = base(ScheduleMode::NonPreemptive);
  short_run.of({0, 0})[0].end = q("3/2");
  CHECK(validate_schedule(inst, short_run).has(ViolationKind::ProcessingIncomplete));

  Schedule overlap = base(ScheduleMode::PreemptiveMigratory);
  overlap.of({1, 0}) = {seg(0, "0", "1/2"), seg(1, "1/4", "3/4")};
  CHECK(validate_schedule(inst, overlap).has(ViolationKind::SimultaneityViolation));

  Schedule migrate = base(ScheduleMode::PreemptiveFixed);
  migrate.of({1, 0}) = {seg(0, "0", "1/2"), seg(1, "1/2", "1")};
  CHECK(validate_schedule(inst, migrate).has(ViolationKind::ModeViolation));
  migrate.mode = ScheduleMode::PreemptiveMigratory;
  CHECK(validate_schedule(inst, migrate).ok());

  Schedule split = base(ScheduleMode::NonPreemptive);
  split.of({0, 0}) = {seg(0, "0", "1"), seg(0, "3/2", "5/2")};
  CHECK(validate_schedule(inst, split).has(ViolationKind::ModeViolation));
}

TEST_CASE("packing check uses a sweep over non-integer breakpoints") {
  Instance inst(caps({"1"}), {job({task("2/3", {{0, 1}})}), job({task("2/3", {{0, 1}})})});
  Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  s.of({0, 0}).push_back(seg(0, "0", "1"));
  s.of({1, 0}).push_back(seg(0, "1", "2"));
  CHECK(validate_schedule(inst, s).ok());
  s.of({1, 0})[0] = seg(0, "999/1000", "1999/1000");
  CHECK(validate_schedule(inst, s).has(ViolationKind::PackingViolation));
}

TEST_CASE("structural errors are not violations") {
  Instance inst = instance_a();
  Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  s.of({0, 0}).push_back(seg(3, "0", "2"));
  CHECK_THROWS_AS(validate_schedule(inst, s), ScheduleStructureError);
  Schedule backwards = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  backwards.of({0, 0}).push_back(seg(0, "2", "0"));
  CHECK_THROWS_AS(validate_schedule(inst, backwards), ScheduleStructureError);
  Schedule wrong_shape;
  CHECK_THROWS_AS(validate_schedule(inst, wrong_shape), ScheduleStructureError);
}

TEST_CASE("completion times and weighted objective") {
  Instance inst(caps({"1"}), {job({task("1", {{0, 2}})}), job({task("1", {{0, 1}})})});
  CHECK(weighted_objective(inst, {3, 1}) == 4);
  Instance weighted(caps({"1"}), {job({task("1", {{0, 2}})}, "2"), job({task("1", {{0, 1}})})});
  CHECK(weighted_objective(weighted, {3, 1}) == 7);
  CHECK(weighted_objective(Instance(caps({"1"}), {}), {}) == 0);

  Instance one(caps({"1"}), {job({task("1", {{0, 2}})})});
  Schedule s = Schedule::empty_for(one, ScheduleMode::PreemptiveFixed);
  s.of({0, 0}) = {seg(0, "0", "1"), seg(0, "2", "3")};
  CHECK(completion_times(one, s)[0] == 3);
}

TEST_CASE("objective is monotone under segment extension and validation is idempotent") {
  Instance inst = instance_a();
  Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  s.of({1, 0}).push_back(seg(0, "0", "1"));
  s.of({0, 0}).push_back(seg(0, "1", "3"));
  Rational before = schedule_objective(inst, s);
  Schedule longer = s;
  longer.of({0, 0})[0].end = 4;
  CHECK(schedule_objective(inst, longer) >= before);
  CHECK(validate_schedule(inst, s).violations.size() == validate_schedule(inst, s).violations.size());
}

TEST_CASE("normalize_segments merges touching pieces on one machine") {
  Instance inst(caps({"1"}), {job({task("1", {{0, 2}})})});
  Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  s.of({0, 0}) = {seg(0, "1", "2"), seg(0, "0", "1")};
  normalize_segments(s);
  REQUIRE(s.of({0, 0}).size() == 1);
  CHECK(s.of({0, 0})[0].start == 0);
  CHECK(s.of({0, 0})[0].end == 2);
}

TEST_CASE("schedule modes have stable names") {
  for (ScheduleMode m : {ScheduleMode::PreemptiveMigratory, ScheduleMode::PreemptiveFixed, ScheduleMode::NonPreemptive})
    CHECK(parse_schedule_mode(to_string(m)) == m);
  CHECK_THROWS(parse_schedule_mode("sometimes"));
}

TEST_CASE("json round trips are exact") {
  Json doc = Json::parse(R"({"machines":[1,"3/2"],"jobs":[{"weight":2.5,"arrival":"1/3",
    "tasks":[{"size":"0.75","proc":{"0":2,"1":3}}]}]})");
  Instance inst = instance_from_json(doc);
  CHECK(inst.capacity(1) == q("3/2"));
  CHECK(inst.jobs()[0].weight == q("5/2"));
  CHECK(inst.jobs()[0].arrival == q("1/3"));
  CHECK(inst.task({0, 0}).size == q("3/4"));
  CHECK(inst.task({0, 0}).proc_on(1) == 3);
  Instance again = instance_from_json(Json::parse(instance_to_json(inst).dump()));
  CHECK(instance_to_json(again) == instance_to_json(inst));

  Schedule s = Schedule::empty_for(inst, ScheduleMode::PreemptiveMigratory);
  s.of({0, 0}) = {seg(0, "0", "1"), seg(1, "1", "5/2")};
  Schedule back = schedule_from_json(Json::parse(schedule_to_json(s).dump()));
  CHECK(back.mode == s.mode);
  CHECK(back.of({0, 0})[1].end == q("5/2"));
  CHECK(validate_schedule(inst, back).ok());
}
