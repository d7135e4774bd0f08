#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace synchpack {

using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Accepts "7", "-3", "1.25", "2.5e-3", "3/4".
Rational parse_rational(std::string_view text);

// Exact binary value of a finite double.
Rational rational_from_double(double value);

// Nearest multiple of 1/den.
Rational snap_rational(double value, std::int64_t den);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational floor_rational(const Rational& q);
Rational ceil_rational(const Rational& q);
std::int64_t ceil_to_int(const Rational& q);
Rational pow_rational(const Rational& base, int exponent);
Rational min_rational(const Rational& a, const Rational& b);
Rational max_rational(const Rational& a, const Rational& b);

}  // namespace synchpack
