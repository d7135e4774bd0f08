#pragma once

#include "synchpack/synchpack.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace synchpack {

struct AlgoOptions {
  Rational epsilon{1, 2};                  // sp1 interval growth
  std::optional<std::uint64_t> seed;       // sampled stretch instead of derandomized (sp1, sp2)
  Rational remote_penalty{2};              // tetris score divisor on remote machines
  bool compact = true;                     // sp2 left compaction
  const lp::LpSolver* solver = nullptr;
};

const std::vector<std::string>& algorithm_names();
bool is_known_algorithm(const std::string& name);

// True for algorithms whose schedules never preempt.
bool is_non_preemptive_algorithm(const std::string& name);

// Runs a named algorithm. Baselines report no LP objective and no ratio.
AlgoResult run_algorithm(const std::string& name, const Instance& instance, const AlgoOptions& options = {});

enum class Relaxation { Lp1, Lp2, Lp3 };
Relaxation parse_relaxation(const std::string& text);
std::string to_string(Relaxation relaxation);

// Optimal objective of the chosen relaxation (a lower bound on the optimum of its schedule class).
Rational lower_bound(const Instance& instance, Relaxation relaxation, const Rational& epsilon,
                     const lp::LpSolver* solver = nullptr);

// Relaxation each algorithm is compared against: its own for sp1..sp3; lp3 on singleton
// instances and lp1 otherwise for baselines.
Relaxation matching_relaxation(const std::string& algorithm, const Instance& instance);

}  // namespace synchpack
