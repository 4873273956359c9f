#include "cayley/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cayley {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) return *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first so that the 128-bit products stay small.
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  *this = from_wide((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  Rational inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  if (inv.den_ < 0) {
    inv.den_ = -inv.den_;
    inv.num_ = -inv.num_;
  }
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto parse_int = [&](const std::string& t) -> std::int64_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != t.size()) throw bad();
    return v;
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_int(s));
  std::string intpart = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos)
    throw bad();
  bool neg = !intpart.empty() && intpart[0] == '-';
  if (intpart == "-" || intpart == "+" || intpart.empty()) intpart += "0";
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Rational whole(parse_int(intpart));
  Rational part(parse_int(frac), scale);
  return neg ? whole - part : whole + part;
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::domain_error("cannot rationalize non-finite value");
  // Convergents of the continued fraction expansion.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(v);
    if (std::fabs(a) > 1e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    std::int64_t p2 = ai * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return Rational(static_cast<std::int64_t>(std::llround(x)));
  return Rational(p1, q1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cayley
