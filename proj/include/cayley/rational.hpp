#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>

namespace cayley {

// Exact rational number over 64-bit integers.  Always normalized: gcd(num, den) == 1
// and den > 0.  Arithmetic goes through 128-bit intermediates and throws
// std::overflow_error when a reduced result does not fit.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p" when integral, "p/q" otherwise.
  std::string str() const;
  // Accepts "p", "p/q", "-p/q" and plain decimals such as "0.25".
  static Rational parse(const std::string& s);
  // Nearest rational with denominator <= max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace cayley
