#include "synchpack/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace synchpack {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10));
  q.canonicalize();
  return q;
}

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9')
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return mpz_class(digits, 10);
}

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    mpz_class den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    if (!exp_part.empty() && exp_part[0] == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size())
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    s = s.substr(0, e);
  }

  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number: '" + std::string(text) + "'");

  Rational q{mpz_class(digits, 10)};
  long scale = exponent - frac_digits;
  if (scale > 0) q *= Rational(pow10(scale));
  if (scale < 0) q /= Rational(pow10(-scale));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

Rational snap_rational(double value, std::int64_t den) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  double scaled = std::nearbyint(value * static_cast<double>(den));
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), scaled);
  Rational q(num, mpz_class(std::to_string(den), 10));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational floor_rational(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil_rational(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

std::int64_t ceil_to_int(const Rational& q) {
  Rational c = ceil_rational(q);
  if (!c.get_num().fits_slong_p()) throw std::overflow_error("value does not fit in 64 bits");
  return c.get_num().get_si();
}

Rational pow_rational(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / base;
    return pow_rational(inv, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational min_rational(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max_rational(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace synchpack
