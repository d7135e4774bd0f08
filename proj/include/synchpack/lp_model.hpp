#pragma once

#include "synchpack/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace synchpack::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

// Column families. Index meaning per kind:
//   Z:     (job, task, machine, interval)
//   X:     (job, interval)
//   C:     (job)
//   Delta: (job, other job)  -- job precedes other job
enum class VarKind { Z, X, C, Delta, Other };

struct VarKey {
  VarKind kind = VarKind::Other;
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  auto operator<=>(const VarKey&) const = default;
};

struct Column {
  VarKey key;
  std::string name;
  Rational cost;
  Rational lower;
  std::optional<Rational> upper;
};

struct Term {
  int column = 0;
  Rational coef;
};

struct Row {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  Rational rhs;
};

// Minimization LP with sparse rows and per-column bounds.
class LpModel {
 public:
  int add_column(const VarKey& key, std::string name, const Rational& cost, const Rational& lower = Rational(0),
                 std::optional<Rational> upper = std::nullopt);
  int add_row(std::string name, std::vector<Term> terms, Sense sense, const Rational& rhs);
  void set_upper(int column, const Rational& upper);

  // -1 when the key has no column.
  int find(const VarKey& key) const;
  int at(const VarKey& key) const;

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  int column_count() const { return static_cast<int>(columns_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  std::size_t nonzero_count() const;

  // CPLEX-style LP text.
  std::string to_lp_format() const;

 private:
  std::vector<Column> columns_;
  std::vector<Row> rows_;
  std::map<VarKey, int> index_;
};

}  // namespace synchpack::lp
