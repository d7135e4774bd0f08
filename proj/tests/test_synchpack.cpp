#include "helpers.hpp"
#include "synchpack/oracle.hpp"
#include "synchpack/synchpack.hpp"
#include "synchpack/workload.hpp"

#include <doctest.h>

using namespace synchpack;
using namespace testutil;

namespace {

bool checks_pass(const AlgoStats& s) {
  for (const auto& [name, ok] : s.lemma_checks) {
    CAPTURE(name);
    CHECK(ok);
  }
  return s.all_checks_pass();
}

Instance random_multi(std::uint64_t seed) {
  SynthParams p;
  p.n_jobs = 6;
  p.max_tasks = 3;
  p.machines = 3;
  p.max_proc = 4;
  p.placement_size = 2;
  p.weights = WeightMode::Random;
  p.seed = seed;
  return synth_instance(p);
}

Instance random_singleton(std::uint64_t seed) {
  SynthParams p;
  p.n_jobs = 8;
  p.max_tasks = 3;
  p.machines = 3;
  p.max_proc = 5;
  p.distinct_machines = true;
  p.weights = WeightMode::Random;
  p.seed = seed;
  return synth_instance(p);
}

}  // namespace

TEST_CASE("SynchPack-1 on a unit task") {
  Instance inst(caps({"1"}), {job({task("1", {{0, 1}})})});
  AlgoResult r = synchpack1(inst);
  CHECK(r.stats.objective == 1);
  REQUIRE(r.stats.lp_objective.has_value());
  CHECK(*r.stats.lp_objective == 0);
  CHECK_FALSE(r.stats.ratio.has_value());
  CHECK(checks_pass(r.stats));
}

TEST_CASE("SynchPack-1 on instance A") {
  for (const char* eps : {"1/2", "1"}) {
    Sp1Options o;
    o.epsilon = q(eps);
    Sp1Trace trace;
    AlgoResult r = synchpack1(instance_a(), o, &trace);
    CHECK(r.schedule.mode == ScheduleMode::PreemptiveMigratory);
    CHECK(validate_schedule(instance_a(), r.schedule).ok());
    CHECK(r.stats.objective <= 6 * (1 + q(eps)) * *r.stats.lp_objective);
    CHECK(r.stats.objective >= brute_force_opt(instance_a(), ScheduleMode::PreemptiveMigratory, 10).objective);
    CHECK(checks_pass(r.stats));
    for (std::size_t l = 0; l < trace.tau.size(); ++l) CHECK(trace.tau[l] <= 3 * trace.grid.d[l]);
  }
}

TEST_CASE("SynchPack-1 on random multi-placement instances") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Instance inst = random_multi(seed);
    AlgoResult r = synchpack1(inst);
    CHECK(validate_schedule(inst, r.schedule).ok());
    CHECK(checks_pass(r.stats));
    REQUIRE(r.stats.lambda.has_value());
    CHECK(*r.stats.lambda > 0);
    CHECK(*r.stats.lambda <= 1);
  }
}

TEST_CASE("SynchPack-1 with a sampled stretch factor is seeded") {
  Instance inst = random_multi(7);
  Sp1Options o;
  o.sample_seed = 42;
  AlgoResult a = synchpack1(inst, o), b = synchpack1(inst, o);
  CHECK(*a.stats.lambda == *b.stats.lambda);
  CHECK(*a.stats.lambda == sample_lambda(42));
  CHECK(a.stats.objective == b.stats.objective);
  CHECK(validate_schedule(inst, a.schedule).ok());
}

TEST_CASE("sampled stretch factors lie in (0, 1] and favour large values") {
  int above_half = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    Rational l = sample_lambda(s);
    CHECK(l > 0);
    CHECK(l <= 1);
    if (l > q("1/2")) ++above_half;
  }
  // Density 2x puts mass 3/4 above one half.
  CHECK(above_half > 1400);
  CHECK(above_half < 1600);
}

TEST_CASE("SynchPack-2 on a unit task") {
  Instance inst(caps({"1"}), {job({task("1", {{0, 1}})})});
  AlgoResult r = synchpack2(inst);
  REQUIRE(r.schedule.of({0, 0}).size() == 1);
  CHECK(r.schedule.of({0, 0})[0].start == 0);
  CHECK(r.schedule.of({0, 0})[0].end == 1);
  CHECK(r.stats.objective == 1);
  // A job placed in the first interval contributes the interval's left end, zero.
  CHECK(*r.stats.lp_objective == 0);
  CHECK_FALSE(r.stats.ratio.has_value());
}

TEST_CASE("SynchPack-2 on a task of length two matches its relaxation") {
  Instance inst(caps({"1"}), {job({task("1", {{0, 2}})})});
  AlgoResult r = synchpack2(inst);
  CHECK(r.stats.objective == 2);
  CHECK(*r.stats.lp_objective == 1);
  CHECK(*r.stats.ratio == 2);
}

TEST_CASE("SynchPack-2 on instance A sits between the optimum and its bound") {
  AlgoResult r = synchpack2(instance_a());
  CHECK(r.stats.objective <= 24 * *r.stats.lp_objective);
  CHECK(r.stats.objective >= brute_force_opt(instance_a(), ScheduleMode::NonPreemptive, 10).objective);
  CHECK(checks_pass(r.stats));
}

TEST_CASE("SynchPack-2 output is non-preemptive with one segment per task") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Instance inst = random_multi(seed);
    for (bool compact : {true, false}) {
      Sp2Options o;
      o.compact = compact;
      Sp2Trace trace;
      AlgoResult r = synchpack2(inst, o, &trace);
      CHECK(r.schedule.mode == ScheduleMode::NonPreemptive);
      for (TaskId id : inst.task_ids()) CHECK(r.schedule.of(id).size() == 1);
      CHECK(validate_schedule(inst, r.schedule).ok());
      CHECK(checks_pass(r.stats));
      CHECK(matching_is_valid(trace.graph, trace.assignment));
      CHECK(std::find(trace.candidate_lambdas.begin(), trace.candidate_lambdas.end(), Rational(1)) !=
            trace.candidate_lambdas.end());
      for (const auto& [id, p] : trace.assignment.of_task)
        CHECK(inst.task(id).proc_on(p.machine) <= trace.grid.d[p.interval]);
    }
  }
}

TEST_CASE("SynchPack-3 on instance A") {
  Sp3Trace trace;
  AlgoResult r = synchpack3(instance_a(), nullptr, &trace);
  CHECK(trace.job_order == std::vector<int>{1, 0});
  CHECK(completion_times(instance_a(), r.schedule) == std::vector<Rational>{3, 1});
  CHECK(r.stats.objective == 4);
  CHECK(*r.stats.ratio == 1);
  CHECK(r.schedule.mode == ScheduleMode::PreemptiveFixed);
}

TEST_CASE("SynchPack-3 runs small tasks side by side") {
  Instance inst(caps({"1"}), {job({task("1/2", {{0, 2}})}), job({task("1/2", {{0, 3}})})});
  AlgoResult r = synchpack3(inst);
  CHECK(r.schedule.of({0, 0})[0].start == 0);
  CHECK(r.schedule.of({1, 0})[0].start == 0);
}

TEST_CASE("SynchPack-3 stays within four times its relaxation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = random_singleton(seed);
    AlgoResult r = synchpack3(inst);
    CHECK(validate_schedule(inst, r.schedule).ok());
    CHECK(r.stats.objective <= 4 * *r.stats.lp_objective);
    CHECK(checks_pass(r.stats));
  }
  Instance multi(caps({"1", "1"}), {job({task("1", {{0, 1}, {1, 1}})})});
  CHECK_THROWS_AS(synchpack3(multi), PreconditionError);
}

TEST_CASE("list scheduling re-packs the machine at every completion") {
  // Order: job 0 (size 1/2, length 1), job 1 (size 3/4, length 4), job 2 (size 1/2, length 4).
  // At 0 jobs 0 and 2 share the machine; at 1 job 0 is done and the list is re-packed in
  // order, so job 1 takes over and job 2 pauses until job 1 finishes.
  Instance inst(caps({"1"}), {job({task("1/2", {{0, 1}})}), job({task("3/4", {{0, 4}})}), job({task("1/2", {{0, 4}})})});
  Schedule s = list_schedule_by_order(inst, {0, 1, 2});
  CHECK(validate_schedule(inst, s).ok());
  CHECK(s.of({1, 0}).size() == 1);
  CHECK(s.of({1, 0})[0].start == 1);
  REQUIRE(s.of({2, 0}).size() == 2);
  CHECK(s.of({2, 0})[0].start == 0);
  CHECK(s.of({2, 0})[0].end == 1);
  CHECK(s.of({2, 0})[1].start == 5);
  CHECK(s.of({2, 0})[1].end == 8);
}

TEST_CASE("left compaction never delays a task") {
  Instance inst(caps({"1"}), {job({task("1/2", {{0, 2}})}), job({task("1/2", {{0, 1}})})});
  Schedule s = Schedule::empty_for(inst, ScheduleMode::NonPreemptive);
  s.of({0, 0}) = {seg(0, "3", "5")};
  s.of({1, 0}) = {seg(0, "4", "5")};
  compact_left(inst, s);
  CHECK(validate_schedule(inst, s).ok());
  CHECK(s.of({0, 0})[0].start == 0);
  CHECK(s.of({1, 0})[0].start == 0);
}

TEST_CASE("stats serialize with nulls for missing values") {
  AlgoStats s;
  s.algorithm = "x";
  s.objective = q("7/2");
  s.lemma_checks["a"] = true;
  Json j = stats_to_json(s);
  CHECK(j["algorithm"] == "x");
  CHECK(j["lp_objective"].is_null());
  CHECK(j["ratio"].is_null());
  CHECK(j["objective"] == "7/2");
  CHECK(j["objective_value"].get<double>() == 3.5);
  CHECK(j["lemma_checks"]["a"] == true);
}

TEST_CASE("empty instances give empty schedules") {
  Instance empty(caps({"1"}), {});
  CHECK(synchpack1(empty).stats.objective == 0);
  CHECK(synchpack2(empty).stats.objective == 0);
  CHECK(synchpack3(empty).stats.objective == 0);
}
