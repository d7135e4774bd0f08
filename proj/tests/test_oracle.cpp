#include "helpers.hpp"
#include "synchpack/oracle.hpp"

#include <doctest.h>

using namespace synchpack;
using namespace testutil;

TEST_CASE("instance A optimum is shortest job first") {
  OptResult r = brute_force_opt(instance_a(), ScheduleMode::NonPreemptive, 10);
  CHECK(r.objective == 4);
  CHECK(validate_schedule(instance_a(), r.schedule).ok());
  CHECK(completion_times(instance_a(), r.schedule) == std::vector<Rational>{3, 1});
}

TEST_CASE("trivial optima") {
  Instance single(caps({"1"}), {job({task("1", {{0, 2}})})});
  CHECK(brute_force_opt(single, ScheduleMode::NonPreemptive, 10).objective == 2);
  Instance parallel(caps({"1", "1"}), {job({task("1", {{0, 1}})}), job({task("1", {{1, 1}})})});
  CHECK(brute_force_opt(parallel, ScheduleMode::NonPreemptive, 10).objective == 2);
}

TEST_CASE("guards refuse large inputs") {
  std::vector<Job> jobs;
  for (int j = 0; j < 5; ++j) jobs.push_back(job({task("1/2", {{0, 1}})}));
  Instance many(caps({"1"}), jobs);
  CHECK_THROWS_AS(brute_force_opt(many, ScheduleMode::NonPreemptive, 10), OracleGuardError);
  CHECK_THROWS_AS(brute_force_opt(instance_a(), ScheduleMode::NonPreemptive, 11), OracleGuardError);
  Instance wide(caps({"1", "1", "1", "1"}), {job({task("1", {{0, 1}})})});
  CHECK_THROWS_AS(brute_force_opt(wide, ScheduleMode::NonPreemptive, 10), OracleGuardError);
}

TEST_CASE("preemption can beat non-preemptive packing") {
  // Three tasks of size 1/2 and length 2 on one unit machine, all in one job: non-preemptively
  // two run together and the third follows (makespan 4); preemptively the three share the
  // machine two at a time and finish by 3.
  Instance inst(caps({"1"}), {job({task("1/2", {{0, 2}}), task("1/2", {{0, 2}}), task("1/2", {{0, 2}})})});
  OptResult np = brute_force_opt(inst, ScheduleMode::NonPreemptive, 10);
  OptResult pf = brute_force_opt(inst, ScheduleMode::PreemptiveFixed, 10);
  CHECK(np.objective == 4);
  CHECK(pf.objective == 3);
  CHECK(validate_schedule(inst, pf.schedule).ok());
}

TEST_CASE("migration helps when the placement is split") {
  // One job with three unit tasks of full size, each placeable on both unit machines: with
  // migration the three tasks are wrapped over two machines and finish at 3/2.
  Instance inst(caps({"1", "1"}),
                {job({task("1", {{0, 1}, {1, 1}}), task("1", {{0, 1}, {1, 1}}), task("1", {{0, 1}, {1, 1}})})});
  OptResult mig = brute_force_opt(inst, ScheduleMode::PreemptiveMigratory, 10);
  OptResult fix = brute_force_opt(inst, ScheduleMode::PreemptiveFixed, 10);
  OptResult np = brute_force_opt(inst, ScheduleMode::NonPreemptive, 10);
  CHECK(mig.objective == q("3/2"));
  CHECK(fix.objective == 2);
  CHECK(np.objective == 2);
  CHECK(validate_schedule(inst, mig.schedule).ok());
}

TEST_CASE("class ordering on small instances") {
  std::vector<Instance> cases{
      instance_a(),
      Instance(caps({"1"}), {job({task("1/2", {{0, 3}})}, "2"), job({task("3/4", {{0, 1}})}), job({task("1/2", {{0, 2}})})}),
      Instance(caps({"1", "2"}), {job({task("1", {{0, 2}, {1, 3}}), task("3/2", {{1, 1}})}), job({task("1", {{0, 1}})}, "3")}),
  };
  for (const Instance& inst : cases) {
    Rational np = brute_force_opt(inst, ScheduleMode::NonPreemptive, 10).objective;
    Rational pf = brute_force_opt(inst, ScheduleMode::PreemptiveFixed, 10).objective;
    Rational pm = brute_force_opt(inst, ScheduleMode::PreemptiveMigratory, 10).objective;
    CHECK(pm <= pf);
    CHECK(pf <= np);
  }
}
