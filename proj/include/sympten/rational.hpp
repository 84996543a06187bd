#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace sympten {

/// Exact rational scalar used by the algebraic-identity backend.
using Rational = mpq_class;

/// Parses "-12", "1.25", "3e-2", "-2/3" exactly. Throws std::invalid_argument.
Rational rational_from_string(const std::string& s);

/// Emits an integer string when integral, "num/den" otherwise.
std::string rational_to_string(const Rational& r);

/// Shortest decimal that round-trips through strtod.
std::string double_to_string(double v);

/// Uniform scalar interface over the two arithmetic backends.
template <class S>
struct Scalar;

/// Correctly-rounded parse of a decimal or "a/b" literal.
double double_from_string(const std::string& s);

template <>
struct Scalar<double> {
  static constexpr bool exact = false;
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_string(const std::string& s) { return double_from_string(s); }
  static bool is_zero(double v) { return v == 0.0; }
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) { return double_to_string(v); }
  static const char* name() { return "float"; }
};

template <>
struct Scalar<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_string(const std::string& s) { return rational_from_string(s); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static std::string to_string(const Rational& v) { return rational_to_string(v); }
  static const char* name() { return "rational"; }
};

}  // namespace sympten
