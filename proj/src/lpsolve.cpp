#include "synchpack/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace synchpack::lp {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

template <class T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, double>)
    return q.get_d();
  else
    return q;
}

template <class T>
T magnitude(const T& x) {
  if constexpr (std::is_same_v<T, double>)
    return std::fabs(x);
  else
    return abs(x);
}

template <class T>
struct Tolerances {
  T feas{0};
  T opt{0};
  T pivot{0};
  T drop{0};
};

template <class T>
struct Result {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> values;
  std::int64_t iterations = 0;
};

// Standard form: min c'y, A y (+ slack) = b >= 0, y >= 0, with x = y + lower for kept columns.
template <class T>
class Simplex {
 public:
  Simplex(const LpModel& model, const Tolerances<T>& tol, std::int64_t max_iters) : model_(model), tol_(tol) {
    build();
    std::int64_t limit = max_iters > 0 ? max_iters : 50 * static_cast<std::int64_t>(m_ + total_);
    max_iters_ = std::max<std::int64_t>(limit, 1);
  }

  Result<T> run() {
    Result<T> res;
    if (trivially_infeasible_) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // Phase 1.
    cost_.assign(total_, T(0));
    for (int j = first_art_; j < total_; ++j) cost_[j] = T(1);
    price();
    LpStatus s = iterate(true);
    res.iterations = iterations_;
    if (s == LpStatus::IterationLimit) {
      res.status = s;
      return res;
    }
    T infeas(0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_art_) infeas += rhs_[i];
    if (infeas > tol_.feas * scale_) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    drive_out_artificials();

    // Phase 2.
    cost_.assign(total_, T(0));
    for (int j = 0; j < n_; ++j) cost_[j] = c_[j];
    price();
    s = iterate(false);
    res.iterations = iterations_;
    if (s != LpStatus::Optimal) {
      res.status = s;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.values = extract();
    return res;
  }

 private:
  void build() {
    const auto& cols = model_.columns();
    int ncols = model_.column_count();
    std::vector<int> map(ncols, -1);
    fixed_.assign(ncols, T(0));
    lower_.assign(ncols, T(0));
    for (int j = 0; j < ncols; ++j) {
      lower_[j] = convert<T>(cols[j].lower);
      if (cols[j].upper && *cols[j].upper == cols[j].lower) {
        fixed_[j] = lower_[j];
        continue;
      }
      map[j] = n_++;
      col_of_.push_back(j);
      c_.push_back(convert<T>(cols[j].cost));
    }
    map_ = map;

    struct StdRow {
      std::vector<std::pair<int, T>> terms;
      Sense sense;
      T rhs;
    };
    std::vector<StdRow> rows;
    for (const Row& r : model_.rows()) {
      StdRow sr{{}, r.sense, convert<T>(r.rhs)};
      for (const Term& t : r.terms) {
        T a = convert<T>(t.coef);
        if (a == T(0)) continue;
        int j = map[t.column];
        if (j < 0) {
          sr.rhs -= a * fixed_[t.column];
        } else {
          sr.rhs -= a * lower_[t.column];
          sr.terms.emplace_back(j, a);
        }
      }
      if (sr.terms.empty()) {
        bool ok = r.sense == Sense::LessEqual      ? !(sr.rhs < -tol_.feas)
                  : r.sense == Sense::GreaterEqual ? !(sr.rhs > tol_.feas)
                                                   : magnitude<T>(sr.rhs) <= tol_.feas;
        if (!ok) trivially_infeasible_ = true;
        continue;
      }
      rows.push_back(std::move(sr));
    }
    for (int j = 0; j < ncols; ++j) {
      if (map[j] < 0 || !cols[j].upper) continue;
      rows.push_back({{{map[j], T(1)}}, Sense::LessEqual, convert<T>(*cols[j].upper) - lower_[j]});
    }
    for (StdRow& r : rows) {
      if (r.rhs < T(0)) {
        r.rhs = -r.rhs;
        for (auto& [j, a] : r.terms) a = -a;
        if (r.sense == Sense::LessEqual)
          r.sense = Sense::GreaterEqual;
        else if (r.sense == Sense::GreaterEqual)
          r.sense = Sense::LessEqual;
      }
    }

    m_ = static_cast<int>(rows.size());
    int slacks = 0, arts = 0;
    for (const StdRow& r : rows) {
      if (r.sense != Sense::Equal) ++slacks;
      if (r.sense != Sense::LessEqual) ++arts;
    }
    first_slack_ = n_;
    first_art_ = n_ + slacks;
    total_ = n_ + slacks + arts;
    stride_ = total_;
    tab_.assign(static_cast<std::size_t>(m_) * stride_, T(0));
    rhs_.assign(m_, T(0));
    basis_.assign(m_, -1);
    int next_slack = first_slack_, next_art = first_art_;
    scale_ = T(1);
    for (int i = 0; i < m_; ++i) {
      const StdRow& r = rows[i];
      for (const auto& [j, a] : r.terms) at(i, j) += a;
      rhs_[i] = r.rhs;
      if (scale_ < r.rhs) scale_ = r.rhs;
      if (r.sense == Sense::LessEqual) {
        at(i, next_slack) = T(1);
        basis_[i] = next_slack++;
      } else if (r.sense == Sense::GreaterEqual) {
        at(i, next_slack++) = T(-1);
        at(i, next_art) = T(1);
        basis_[i] = next_art++;
      } else {
        at(i, next_art) = T(1);
        basis_[i] = next_art++;
      }
    }
  }

  T& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * stride_ + j]; }

  void price() {
    reduced_ = cost_;
    for (int i = 0; i < m_; ++i) {
      T cb = cost_[basis_[i]];
      if (cb == T(0)) continue;
      const T* row = &tab_[static_cast<std::size_t>(i) * stride_];
      for (int j = 0; j < total_; ++j)
        if (row[j] != T(0)) reduced_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) reduced_[basis_[i]] = T(0);
  }

  LpStatus iterate(bool phase_one) {
    int limit_col = phase_one ? total_ : first_art_;
    while (true) {
      int q = -1;
      if (degenerate_run_ >= kBlandAfter) {
        for (int j = 0; j < limit_col; ++j)
          if (reduced_[j] < -tol_.opt) {
            q = j;
            break;
          }
      } else {
        T most = -tol_.opt;
        for (int j = 0; j < limit_col; ++j)
          if (reduced_[j] < most) {
            most = reduced_[j];
            q = j;
          }
      }
      if (q < 0) return LpStatus::Optimal;
      if (iterations_ >= max_iters_) return LpStatus::IterationLimit;

      int p = -1;
      T best(0);
      if (degenerate_run_ >= kBlandAfter || !std::is_same_v<T, double>) {
        for (int i = 0; i < m_; ++i) {
          T a = at(i, q);
          if (!(a > tol_.pivot)) continue;
          T ratio = rhs_[i] / a;
          if (p < 0 || ratio < best || (ratio == best && basis_[i] < basis_[p])) {
            p = i;
            best = ratio;
          }
        }
      } else {
        // Harris two-pass: bound the step with relaxed feasibility, then take the largest pivot under it.
        T bound(0);
        bool any = false;
        for (int i = 0; i < m_; ++i) {
          T a = at(i, q);
          if (!(a > tol_.pivot)) continue;
          T ratio = (rhs_[i] + tol_.feas) / a;
          if (!any || ratio < bound) bound = ratio;
          any = true;
        }
        T largest(0);
        for (int i = 0; any && i < m_; ++i) {
          T a = at(i, q);
          if (!(a > tol_.pivot)) continue;
          T ratio = rhs_[i] / a;
          if (ratio <= bound && (p < 0 || a > largest || (a == largest && basis_[i] < basis_[p]))) {
            p = i;
            largest = a;
            best = ratio;
          }
        }
      }
      if (p < 0) return LpStatus::Unbounded;
      if (best > tol_.feas)
        degenerate_run_ = 0;
      else
        ++degenerate_run_;
      pivot(p, q);
      ++iterations_;
    }
  }

  void pivot(int p, int q) {
    T* prow = &tab_[static_cast<std::size_t>(p) * stride_];
    T inv = T(1) / prow[q];
    nz_.clear();
    for (int j = 0; j < total_; ++j) {
      if (prow[j] == T(0)) continue;
      prow[j] *= inv;
      nz_.push_back(j);
    }
    prow[q] = T(1);
    rhs_[p] *= inv;

    for (int i = 0; i < m_; ++i) {
      if (i == p) continue;
      T* row = &tab_[static_cast<std::size_t>(i) * stride_];
      T f = row[q];
      if (f == T(0)) continue;
      for (int j : nz_) {
        row[j] -= f * prow[j];
        if constexpr (std::is_same_v<T, double>)
          if (std::fabs(row[j]) < tol_.drop) row[j] = 0.0;
      }
      row[q] = T(0);
      rhs_[i] -= f * rhs_[p];
      if constexpr (std::is_same_v<T, double>)
        if (rhs_[i] < 0.0 && rhs_[i] > -tol_.feas) rhs_[i] = 0.0;
    }
    T f = reduced_[q];
    if (f != T(0)) {
      for (int j : nz_) {
        reduced_[j] -= f * prow[j];
        if constexpr (std::is_same_v<T, double>)
          if (std::fabs(reduced_[j]) < tol_.drop) reduced_[j] = 0.0;
      }
      reduced_[q] = T(0);
    }
    basis_[p] = q;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      int q = -1;
      T best(0);
      for (int j = 0; j < first_art_; ++j) {
        T a = magnitude<T>(at(i, j));
        if (a > tol_.pivot && a > best) {
          best = a;
          q = j;
        }
      }
      // A row with no structural entries is redundant; its artificial stays basic at zero.
      if (q >= 0) pivot(i, q);
    }
  }

  std::vector<T> extract() const {
    std::vector<T> y(n_, T(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = rhs_[i];
    std::vector<T> x(model_.column_count(), T(0));
    for (int j = 0; j < model_.column_count(); ++j) x[j] = map_[j] < 0 ? fixed_[j] : y[map_[j]] + lower_[j];
    return x;
  }

  const LpModel& model_;
  Tolerances<T> tol_;
  std::int64_t max_iters_ = 0;
  std::int64_t iterations_ = 0;
  static constexpr int kBlandAfter = 50;
  int degenerate_run_ = 0;
  bool trivially_infeasible_ = false;

  int n_ = 0;
  int m_ = 0;
  int first_slack_ = 0;
  int first_art_ = 0;
  int total_ = 0;
  int stride_ = 0;
  T scale_{1};
  std::vector<int> map_;
  std::vector<int> col_of_;
  std::vector<T> fixed_;
  std::vector<T> lower_;
  std::vector<T> c_;
  std::vector<T> tab_;
  std::vector<T> rhs_;
  std::vector<int> basis_;
  std::vector<T> cost_;
  std::vector<T> reduced_;
  std::vector<int> nz_;
};

}  // namespace

LpSolution DenseSimplexSolver::solve(const LpModel& model, const SolveOptions& options) const {
  Tolerances<double> tol{std::min(options.feas_tol, 1e-9), options.opt_tol, 1e-9, 1e-13};
  Simplex<double> simplex(model, tol, options.max_iters);
  Result<double> r = simplex.run();
  LpSolution out;
  out.status = r.status;
  out.iterations = r.iterations;
  if (r.status == LpStatus::Optimal) {
    out.values = std::move(r.values);
    out.objective = evaluate_objective(model, out.values);
  }
  return out;
}

const LpSolver& default_solver() {
  static const DenseSimplexSolver solver;
  return solver;
}

LpSolution solve_lp(const LpModel& model, const SolveOptions& options) { return default_solver().solve(model, options); }

ExactLpSolution solve_lp_exact(const LpModel& model, std::int64_t max_iters) {
  Tolerances<Rational> tol;
  Simplex<Rational> simplex(model, tol, max_iters);
  Result<Rational> r = simplex.run();
  ExactLpSolution out;
  out.status = r.status;
  out.iterations = r.iterations;
  if (r.status == LpStatus::Optimal) {
    out.values = std::move(r.values);
    out.objective = 0;
    for (int j = 0; j < model.column_count(); ++j) out.objective += model.columns()[j].cost * out.values[j];
  }
  return out;
}

double max_residual(const LpModel& model, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != model.column_count())
    throw std::invalid_argument("value vector does not match column count");
  double worst = 0.0;
  for (int j = 0; j < model.column_count(); ++j) {
    const Column& c = model.columns()[j];
    worst = std::max(worst, c.lower.get_d() - values[j]);
    if (c.upper) worst = std::max(worst, values[j] - c.upper->get_d());
  }
  for (const Row& r : model.rows()) {
    double lhs = 0.0;
    for (const Term& t : r.terms) lhs += t.coef.get_d() * values[t.column];
    double rhs = r.rhs.get_d();
    if (r.sense != Sense::GreaterEqual) worst = std::max(worst, lhs - rhs);
    if (r.sense != Sense::LessEqual) worst = std::max(worst, rhs - lhs);
  }
  return worst;
}

double evaluate_objective(const LpModel& model, const std::vector<double>& values) {
  double obj = 0.0;
  for (int j = 0; j < model.column_count(); ++j) {
    const Rational& c = model.columns()[j].cost;
    if (c != 0) obj += c.get_d() * values[j];
  }
  return obj;
}

}  // namespace synchpack::lp
