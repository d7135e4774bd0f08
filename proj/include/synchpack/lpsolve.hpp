#pragma once

#include "synchpack/lp_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace synchpack::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus status);

struct SolveOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  std::int64_t max_iters = 0;  // 0 selects 50 * (rows + columns) of the standard form
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

struct ExactLpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> values;
  Rational objective;
  std::int64_t iterations = 0;
};

// Seam for plugging in an external solver.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LpModel& model, const SolveOptions& options) const = 0;
  virtual std::string name() const = 0;
};

// Two-phase dense primal simplex. Dantzig pricing with a Harris ratio test; after a run of
// degenerate pivots it switches to Bland's rule until the objective moves again.
class DenseSimplexSolver final : public LpSolver {
 public:
  LpSolution solve(const LpModel& model, const SolveOptions& options) const override;
  std::string name() const override { return "dense-simplex"; }
};

const LpSolver& default_solver();

LpSolution solve_lp(const LpModel& model, const SolveOptions& options = {});

// Same algorithm over exact rationals; meant for small models.
ExactLpSolution solve_lp_exact(const LpModel& model, std::int64_t max_iters = 0);

// Largest violation of any row or bound, evaluated directly from the model.
double max_residual(const LpModel& model, const std::vector<double>& values);

double evaluate_objective(const LpModel& model, const std::vector<double>& values);

}  // namespace synchpack::lp
