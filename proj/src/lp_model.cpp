#include "synchpack/lp_model.hpp"

#include <sstream>
#include <stdexcept>

namespace synchpack::lp {

int LpModel::add_column(const VarKey& key, std::string name, const Rational& cost, const Rational& lower,
                        std::optional<Rational> upper) {
  if (key.kind != VarKind::Other && index_.count(key)) throw std::logic_error("duplicate LP column " + name);
  if (upper && *upper < lower) throw std::invalid_argument("column " + name + " has upper bound below lower bound");
  int id = static_cast<int>(columns_.size());
  columns_.push_back({key, std::move(name), cost, lower, std::move(upper)});
  if (key.kind != VarKind::Other) index_[key] = id;
  return id;
}

int LpModel::add_row(std::string name, std::vector<Term> terms, Sense sense, const Rational& rhs) {
  for (const Term& t : terms)
    if (t.column < 0 || t.column >= column_count()) throw std::out_of_range("row " + name + " references unknown column");
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void LpModel::set_upper(int column, const Rational& upper) {
  Column& c = columns_.at(column);
  if (upper < c.lower) throw std::invalid_argument("column " + c.name + " has upper bound below lower bound");
  c.upper = upper;
}

int LpModel::find(const VarKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

int LpModel::at(const VarKey& key) const {
  int id = find(key);
  if (id < 0) throw std::out_of_range("LP column not found");
  return id;
}

std::size_t LpModel::nonzero_count() const {
  std::size_t n = 0;
  for (const Row& r : rows_) n += r.terms.size();
  return n;
}

namespace {

std::string number(const Rational& q) {
  // LP text has no fraction syntax; print a decimal with enough digits to round-trip a double.
  if (q.get_den() == 1) return q.get_num().get_str();
  std::ostringstream os;
  os.precision(17);
  os << q.get_d();
  return os.str();
}

void write_linear(std::ostringstream& os, const std::vector<std::pair<std::string, Rational>>& terms) {
  bool first = true;
  for (const auto& [name, coef] : terms) {
    if (coef == 0) continue;
    if (coef < 0)
      os << (first ? "- " : " - ");
    else if (!first)
      os << " + ";
    Rational mag = abs(coef);
    if (mag != 1) os << number(mag) << ' ';
    os << name;
    first = false;
  }
  if (first) os << "0 " << "dummy";
}

}  // namespace

std::string LpModel::to_lp_format() const {
  std::ostringstream os;
  os << "Minimize\n obj: ";
  std::vector<std::pair<std::string, Rational>> obj;
  for (const Column& c : columns_)
    if (c.cost != 0) obj.emplace_back(c.name, c.cost);
  write_linear(os, obj);
  os << "\nSubject To\n";
  for (const Row& r : rows_) {
    os << ' ' << r.name << ": ";
    std::vector<std::pair<std::string, Rational>> terms;
    for (const Term& t : r.terms) terms.emplace_back(columns_[t.column].name, t.coef);
    write_linear(os, terms);
    os << (r.sense == Sense::LessEqual ? " <= " : r.sense == Sense::GreaterEqual ? " >= " : " = ") << number(r.rhs)
       << '\n';
  }
  os << "Bounds\n";
  for (const Column& c : columns_) {
    if (c.upper && *c.upper == c.lower)
      os << ' ' << c.name << " = " << number(c.lower) << '\n';
    else if (c.upper)
      os << ' ' << number(c.lower) << " <= " << c.name << " <= " << number(*c.upper) << '\n';
    else if (c.lower != 0)
      os << ' ' << c.name << " >= " << number(c.lower) << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace synchpack::lp
