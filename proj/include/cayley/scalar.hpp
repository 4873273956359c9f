#pragma once

#include <cmath>
#include <string>

#include "cayley/rational.hpp"

namespace cayley {

// Absolute tolerance used whenever a float residual is compared with zero.
inline constexpr double kFloatTol = 1e-9;

enum class Backend { Exact, Float };

// Uniform access to the two scalar backends (Rational and double).
template <class T>
struct Num;

template <>
struct Num<Rational> {
  static constexpr Backend backend = Backend::Exact;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static int sign(const Rational& x) { return x.sign(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational from(const Rational& x) { return x; }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational abs(const Rational& x) { return cayley::abs(x); }
  // Magnitude used for pivot selection.
  static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct Num<double> {
  static constexpr Backend backend = Backend::Float;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return std::fabs(x) <= kFloatTol; }
  static bool equal(double a, double b) { return std::fabs(a - b) <= kFloatTol; }
  static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
  static double to_double(double x) { return x; }
  static double from(const Rational& x) { return x.to_double(); }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double abs(double x) { return std::fabs(x); }
  static double magnitude(double x) { return std::fabs(x); }
  static std::string str(double x) { return std::to_string(x); }
};

}  // namespace cayley
