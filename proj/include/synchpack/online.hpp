#pragma once

#include "synchpack/algorithms.hpp"

#include <string>
#include <vector>

namespace synchpack {

struct OnlineConfig {
  Rational tau0{300};
  Rational gamma{0};
  Rational beta{0};
  std::string algorithm = "sp3";
  bool preemptive = true;
  AlgoOptions options;
};

// Length of batch i >= 1: tau0 / (1 + gamma * exp(-beta * i)), with the exponential snapped to
// 1e-9 and the resulting length snapped down to 1e-9 (never below 1e-9).
Rational batch_length(const OnlineConfig& config, int i);

struct OnlineResult {
  Schedule schedule;
  std::vector<Rational> delays;        // completion minus arrival, per job
  std::vector<Rational> boundaries;    // batch boundaries at which a plan was computed
  Rational weighted_average_delay;     // sum w * delay / sum w
};

// Re-plans the unfinished work at every batch boundary with the offline algorithm. Preemptive
// mode cuts every plan at the next boundary; non-preemptive mode keeps every task that started
// before the boundary and plans the rest once that work has drained.
OnlineResult run_online(const Instance& stream, const OnlineConfig& config);

}  // namespace synchpack
