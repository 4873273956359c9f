#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayley/curvature.hpp"

namespace cayley {

struct TorsionMask {
  bool biangle = true;
  bool triangle = true;
  bool quadrangle = true;

  static TorsionMask full() { return {true, true, true}; }
  static TorsionMask none() { return {false, false, false}; }
  // Comma-separated sector names, e.g. "biangle,triangle"; "all" and "none" accepted.
  static TorsionMask parse(const std::string& s);
  std::string str() const;
  bool covers(Sector s) const {
    return (s == Sector::Biangle && biangle) || (s == Sector::Triangle && triangle) ||
           (s == Sector::Quadrangle && quadrangle);
  }
};

// Entry = constant + coeff * x[param] (param < 0: constant entry).
struct AffineEntry {
  Rational constant;
  int param = -1;
  Rational coeff = 1;
};

// Connection template for one site: fixed entries from the masked torsion sectors and
// free slots.  Quadrangle ties V_a[:,b] + e_a = V_a'[:,b'] + e_a' share parameters:
// the raw column entries of the first chain member are the free parameters.
struct Parameterization {
  int n = 0;
  int num_params = 0;
  std::vector<std::vector<AffineEntry>> entries;  // [arrow][row * n + col]
  std::vector<std::string> param_names;           // "V<arrow>[row,col]" of the defining slot
  std::vector<int> last_param;                    // per arrow: highest parameter index used (-1: none)

  template <class T>
  Matrix<T> arrow_matrix(int a, const std::vector<T>& x) const {
    Matrix<T> m(n, n);
    for (int i = 0; i < n * n; ++i) {
      const auto& e = entries[a][i];
      T v = Num<T>::from(e.constant);
      if (e.param >= 0) v += Num<T>::from(e.coeff) * x[e.param];
      m(i / n, i % n) = v;
    }
    return m;
  }

  template <class T>
  std::vector<Matrix<T>> instantiate(const std::vector<T>& x) const {
    std::vector<Matrix<T>> out;
    for (int a = 0; a < n; ++a) out.push_back(arrow_matrix(a, x));
    return out;
  }
};

Parameterization parameterize(const Lattice& lat, const TorsionMask& mask);

// True when the masked torsion sectors of c vanish at every site.
template <class T>
bool masked_torsion_zero(const Lattice& lat, const Connection<T>& c, const TorsionMask& mask) {
  auto tc = torsion(lat, c);
  for (int x = 0; x < lat.n(); ++x)
    for (int y = 0; y < lat.n(); ++y) {
      if (!mask.covers(lat.cap_class(x, y).sector)) continue;
      for (Elem g = 0; g < lat.order(); ++g)
        if (!is_zero_vector(tc.at(x, y, g))) return false;
    }
  return true;
}

struct SolveConfig {
  bool constant_connection = true;
  std::optional<std::vector<Rational>> grid;  // exhaustive search values per parameter
  int newton_restarts = 64;
  int newton_iterations = 200;
  double tolerance = 1e-10;
  std::int64_t max_denominator = 64;
  std::uint64_t seed = 12345;
  int threads = 1;
};

// Multiples of 1/2 in [-4, 4].
std::vector<Rational> default_grid();

// One solution: a transport matrix per arrow (constant mode: valid at every site;
// site mode: at the solved site only).
struct Solution {
  bool exact = false;
  std::vector<Matrix<Rational>> exact_V;
  std::vector<Matrix<double>> V;
  std::vector<double> params;
  double residual = 0;
  bool flat = false;               // constant mode: full curvature vanishes
  std::vector<int> det_sign;       // per arrow
};

struct SolveReport {
  Parameterization param;
  TorsionMask mask;
  bool constant_connection = true;
  std::vector<Solution> solutions;               // constant mode
  std::vector<std::vector<Solution>> per_site;   // site mode, indexed by site
};

// Metric-compatible connections whose masked torsion sectors vanish.  Throws when the
// metric signature is not constant.
SolveReport solve(const Lattice& lat, const MetricField<Rational>& m, const TorsionMask& mask,
                  const SolveConfig& cfg);

// The site-dependent system decouples by site: V_h(g) only meets g(g) and g(gh).
std::vector<Solution> solve_at_site(const Lattice& lat, const MetricField<Rational>& m, const TorsionMask& mask,
                                    Elem site, const SolveConfig& cfg);

Connection<Rational> constant_connection(const Lattice& lat, const Solution& s);
// Site mode: picks choice[g] from report.per_site[g] (exact solutions only).
Connection<Rational> assemble(const Lattice& lat, const SolveReport& report, const std::vector<int>& choice);

// Basis of the constant symmetric metrics g with V_h^T g V_h = g for a constant connection.
std::vector<Matrix<Rational>> compatible_constant_metrics(const Lattice& lat, const Connection<Rational>& c);

// Exact nullspace basis of a rational matrix.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& a);

// Rank of a rational matrix.
int rank(const Matrix<Rational>& a);

struct InequalityReport {
  struct Entry {
    Elem site;
    std::pair<int, int> pair;
    std::pair<int, int> partner;
    double lower, middle, upper;
    bool ok;
  };
  std::vector<Entry> entries;
  bool ok = true;
  std::vector<Elem> failing_sites;
};

// |sqrt(R*_a g_bb) - sqrt(R*_a' g_b'b')| <= sqrt(g_aa + g_a'a' - 2 g_aa') <= sum,
// for every pair of members (a,b), (a',b') of a quadrangle chain, at every site.
template <class T>
InequalityReport lc_existence_inequality(const Lattice& lat, const MetricField<T>& m) {
  auto sig = validate_metric(lat, m);
  for (const auto& s : sig.per_site)
    if (s.second != 0) throw Error(errc::kSignature, "existence inequality needs a positive-definite metric");
  InequalityReport rep;
  const double slack = 1e-12;
  for (Elem g = 0; g < lat.order(); ++g) {
    bool site_ok = true;
    for (const auto& chain : lat.chains())
      for (std::size_t i = 0; i < chain.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < chain.pairs.size(); ++j) {
          auto [a, b] = chain.pairs[i];
          auto [a2, b2] = chain.pairs[j];
          double l1 = std::sqrt(Num<T>::to_double(m[lat.step(g, a)](b, b)));
          double l2 = std::sqrt(Num<T>::to_double(m[lat.step(g, a2)](b2, b2)));
          double d2 = Num<T>::to_double(m[g](a, a) + m[g](a2, a2) - m[g](a, a2) - m[g](a2, a));
          double mid = std::sqrt(std::max(0.0, d2));
          InequalityReport::Entry e{g, {a, b}, {a2, b2}, std::fabs(l1 - l2), mid, l1 + l2, false};
          e.ok = e.lower <= mid + slack && mid <= e.upper + slack;
          site_ok = site_ok && e.ok;
          rep.entries.push_back(e);
        }
    if (!site_ok) {
      rep.ok = false;
      rep.failing_sites.push_back(g);
    }
  }
  return rep;
}

struct FlatFamily {
  MetricField<Rational> metric;
  Connection<Rational> connection;
  std::vector<Rational> p, q;  // per site
};

// Metric and Levi-Civita connection on (Z4, {1,2}) generated from the values at site 0.
FlatFamily flat_family_z4(const Rational& p0, const Rational& q0, const Rational& a0, const Rational& b0,
                          const Rational& c0);

// One step of R_1^* and R_2^* on (p, q).
std::pair<Rational, Rational> z4_shift1(const Rational& p, const Rational& q);
std::pair<Rational, Rational> z4_shift2(const Rational& p, const Rational& q);

struct ReflectionPair {
  int i = 0, j = 0;
  std::vector<double> A_ij, A_ji;
  bool symmetric = false;      // A_ij == A_ji
  bool orthogonal = false;     // A_ij . (u_j - u_i) == 0
  bool reflection = false;     // A_ij == -2 (a . V_ij) a for the unit vector a along A_ij
  std::vector<double> normal;  // a_ij, empty when A_ij = 0
};

struct ReflectionReport {
  Elem site = 0;
  std::vector<ReflectionPair> pairs;
};

// Compares two torsion-free compatible connections on a hypercubic lattice at `site`
// in development coordinates: A_ij = J_i(V_ij) - V_ij.
ReflectionReport reflection_freedom(const Lattice& lat, const MetricField<Rational>& m,
                                    const Connection<Rational>& c1, const Connection<Rational>& c2, Elem site);

struct OrientationFlags {
  std::vector<std::vector<int>> det_sign;  // [arrow][site]
  std::vector<int> dyad;                   // [site]: sign of V^1_{1,2} + V^2_{1,2}; only when |S| = 2
  // Folding flag against an expected determinant sign (+1 on hypercubic lattices).
  bool folded(int expected_sign = 1) const {
    for (const auto& row : det_sign)
      for (int s : row)
        if (s != expected_sign) return true;
    return false;
  }
};

template <class T>
OrientationFlags orientation_flags(const Lattice& lat, const Connection<T>& c) {
  OrientationFlags f;
  for (int a = 0; a < lat.n(); ++a) {
    std::vector<int> row;
    for (Elem g = 0; g < lat.order(); ++g) row.push_back(Num<T>::sign(determinant(c.at(a, g))));
    f.det_sign.push_back(std::move(row));
  }
  if (lat.n() == 2)
    for (Elem g = 0; g < lat.order(); ++g) f.dyad.push_back(Num<T>::sign(c.at(0, g)(0, 1) + c.at(0, g)(1, 1)));
  return f;
}

}  // namespace cayley
