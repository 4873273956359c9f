#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cayley/io.hpp"

namespace cayley::testing {

using RM = Matrix<Rational>;

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline Lattice z3() { return Lattice(Group::cyclic(3), {1, 2}); }
inline Lattice z4_12() { return Lattice(Group::cyclic(4), {1, 2}); }
inline Lattice z4_13() { return Lattice(Group::cyclic(4), {1, 3}); }
inline Lattice z4_123() { return Lattice(Group::cyclic(4), {1, 2, 3}); }

inline Lattice s3() {
  Group g = Group::symmetric(3);
  return Lattice(g, {*g.parse_cycles("(12)"), *g.parse_cycles("(13)"), *g.parse_cycles("(23)")});
}

inline Lattice torus(const std::vector<int>& moduli) {
  Group g = Group::torus(moduli);
  std::vector<Elem> units;
  for (std::size_t mu = 0; mu < moduli.size(); ++mu) {
    std::vector<int> c(moduli.size(), 0);
    c[mu] = 1;
    units.push_back(g.from_coords(c));
  }
  return Lattice(g, units);
}

inline RM tetra_metric() { return RM{{R(1), R(1, 2)}, {R(1, 2), R(1)}}; }

inline MetricField<Rational> constant_metric(const Lattice& lat, const RM& m) {
  return MetricField<Rational>::constant(lat.order(), m);
}

inline Connection<Rational> constant_conn(const Lattice& lat, const std::vector<RM>& v) {
  return Connection<Rational>::constant(lat.order(), v);
}

// Z3 connection with the spherical (90 degree rotation) transport.
inline Connection<Rational> z3_spherical() {
  return constant_conn(z3(), {RM{{R(0), R(-1)}, {R(1), R(0)}}, RM{{R(0), R(1)}, {R(-1), R(0)}}});
}

// Hand-rolled generators over small rationals.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Rational rational(int max_num = 5, int max_den = 4) {
    return Rational(integer(-max_num, max_num), integer(1, max_den));
  }
  Rational nonzero_rational(int max_num = 5, int max_den = 4) {
    for (;;) {
      Rational r = rational(max_num, max_den);
      if (!r.is_zero()) return r;
    }
  }

  RM matrix(int n, int max_num = 3, int max_den = 3) {
    RM m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rational(max_num, max_den);
    return m;
  }

  RM invertible(int n) {
    for (;;) {
      RM m = matrix(n);
      if (!determinant(m).is_zero()) return m;
    }
  }

  ScalarField<Rational> field(int order) {
    ScalarField<Rational> f(order);
    for (auto& x : f.v) x = rational();
    return f;
  }

  // Diagonal sign matrix with p plus entries followed by minus entries.
  static RM eta(int n, int negatives) {
    RM e = RM::identity(n);
    for (int i = n - negatives; i < n; ++i) e(i, i) = R(-1);
    return e;
  }

  // Cayley transform of an eta-skew matrix: an exact eta-orthogonal matrix.
  RM orthogonal(const RM& eta) {
    const int n = eta.rows();
    for (;;) {
      RM a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          a(i, j) = rational(3, 3);
          a(j, i) = -a(i, j);
        }
      RM k = eta * a;  // eta^-1 = eta
      RM id = RM::identity(n);
      auto inv = inverse(id + k);
      if (!inv) continue;
      RM o = (id - k) * *inv;
      if (integer(0, 1)) {
        // Include reflections: flip one axis.
        RM f = RM::identity(n);
        f(0, 0) = R(-1);
        o = o * f;
      }
      return o;
    }
  }

  // g(g) = A(g)^T eta A(g) with a random invertible A(g) per site.
  struct CompatiblePair {
    MetricField<Rational> metric;
    Connection<Rational> connection;
    std::vector<RM> frame;  // A per site
    RM eta;
  };

  CompatiblePair compatible(const Lattice& lat, int negatives = 0) {
    CompatiblePair p;
    const int n = lat.n();
    p.eta = eta(n, negatives);
    for (Elem g = 0; g < lat.order(); ++g) p.frame.push_back(invertible(n));
    for (Elem g = 0; g < lat.order(); ++g) p.metric.g.push_back(p.frame[g].transpose() * p.eta * p.frame[g]);
    p.connection.V.assign(n, MatrixField<Rational>(lat.order()));
    for (int a = 0; a < n; ++a)
      for (Elem g = 0; g < lat.order(); ++g)
        p.connection.at(a, g) = *inverse(p.frame[g]) * orthogonal(p.eta) * p.frame[lat.step(g, a)];
    return p;
  }

  // Integer frames with unit determinant and signed-permutation isometries, so every V is
  // an integer matrix.  Keeps long exact products inside 64-bit rationals.
  CompatiblePair compatible_integral(const Lattice& lat) {
    CompatiblePair p;
    const int n = lat.n();
    p.eta = RM::identity(n);
    for (Elem g = 0; g < lat.order(); ++g) {
      RM a = RM::identity(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = integer(-1, 1);
      p.frame.push_back(a);
      p.metric.g.push_back(a.transpose() * a);
    }
    p.connection.V.assign(n, MatrixField<Rational>(lat.order()));
    for (int a = 0; a < n; ++a)
      for (Elem g = 0; g < lat.order(); ++g)
        p.connection.at(a, g) = *inverse(p.frame[g]) * signed_permutation(n) * p.frame[lat.step(g, a)];
    return p;
  }

  RM signed_permutation(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_);
    RM o(n, n);
    for (int i = 0; i < n; ++i) o(i, perm[i]) = integer(0, 1) ? R(1) : R(-1);
    return o;
  }

  Connection<Rational> connection(const Lattice& lat) {
    Connection<Rational> c;
    c.V.assign(lat.n(), MatrixField<Rational>(lat.order()));
    for (int a = 0; a < lat.n(); ++a)
      for (Elem g = 0; g < lat.order(); ++g) c.at(a, g) = matrix(lat.n());
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace cayley::testing

namespace cayley {

// Readable gtest failure output for matrices.
template <class T>
void PrintTo(const Matrix<T>& m, std::ostream* os) {
  *os << matrix_json(m).dump();
}

}  // namespace cayley
