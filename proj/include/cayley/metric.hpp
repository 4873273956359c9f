#pragma once

#include <queue>
#include <string>
#include <vector>

#include "cayley/calculus.hpp"
#include "cayley/error.hpp"
#include "cayley/lattice.hpp"
#include "cayley/matrix.hpp"

#include <Eigen/Eigenvalues>

namespace cayley {

// Per-site matrix field, indexed by element.
template <class T>
using MatrixField = std::vector<Matrix<T>>;

// Metric: symmetric invertible |S| x |S| matrix per site (L-basis coefficients).
template <class T>
struct MetricField {
  MatrixField<T> g;

  MetricField() = default;
  explicit MetricField(MatrixField<T> m) : g(std::move(m)) {}
  static MetricField constant(int order, const Matrix<T>& m) { return MetricField(MatrixField<T>(order, m)); }

  const Matrix<T>& operator[](Elem e) const { return g[e]; }
  Matrix<T>& operator[](Elem e) { return g[e]; }
  int order() const { return static_cast<int>(g.size()); }
  int dim() const { return g.empty() ? 0 : g[0].rows(); }
};

struct Signature {
  std::vector<std::pair<int, int>> per_site;  // (n+, n-)
  bool constant = true;
  std::pair<int, int> at(Elem g) const { return per_site[g]; }
};

// Sign counts of a symmetric matrix.  Exact backend: symmetric pivoted elimination
// (diagonal pivots, or a 2x2 block when every remaining diagonal entry vanishes).
// Float backend: symmetric eigenvalues.  Returns (n+, n-, n0).
inline std::tuple<int, int, int> inertia(const Matrix<Rational>& m0) {
  Matrix<Rational> m = m0;
  int n = m.rows();
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  int pos = 0, neg = 0;
  while (!alive.empty()) {
    int piv = -1;
    for (int i : alive)
      if (!m(i, i).is_zero()) {
        piv = i;
        break;
      }
    if (piv >= 0) {
      Rational d = m(piv, piv);
      (d.sign() > 0 ? pos : neg) += 1;
      for (int r : alive) {
        if (r == piv) continue;
        Rational f = m(r, piv) / d;
        if (f.is_zero()) continue;
        for (int c : alive) m(r, c) -= f * m(piv, c);
      }
      alive.erase(std::find(alive.begin(), alive.end(), piv));
      continue;
    }
    int pi = -1, pj = -1;
    for (std::size_t a = 0; a < alive.size() && pi < 0; ++a)
      for (std::size_t b = a + 1; b < alive.size(); ++b)
        if (!m(alive[a], alive[b]).is_zero()) {
          pi = alive[a];
          pj = alive[b];
          break;
        }
    if (pi < 0) break;  // remaining block is zero
    // The block [[0, x], [x, 0]] has one positive and one negative eigenvalue.
    pos += 1;
    neg += 1;
    Rational x = m(pi, pj);
    // Eliminate the other rows against the 2x2 block: B^-1 = [[0, 1/x], [1/x, 0]].
    for (int r : alive) {
      if (r == pi || r == pj) continue;
      Rational ci = m(r, pj) / x;  // coefficient for row pi
      Rational cj = m(r, pi) / x;  // coefficient for row pj
      for (int c : alive) m(r, c) -= ci * m(pi, c) + cj * m(pj, c);
    }
    alive.erase(std::find(alive.begin(), alive.end(), pi));
    alive.erase(std::find(alive.begin(), alive.end(), pj));
  }
  return {pos, neg, n - pos - neg};
}

inline std::tuple<int, int, int> inertia(const Matrix<double>& m) {
  const int n = m.rows();
  Eigen::MatrixXd e(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) e(r, c) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0, zero = 0;
  for (int i = 0; i < n; ++i) {
    double l = es.eigenvalues()(i);
    if (std::fabs(l) < kFloatTol)
      ++zero;
    else if (l > 0)
      ++pos;
    else
      ++neg;
  }
  return {pos, neg, zero};
}

// Throws on asymmetric or singular sites; reports the signature per site.
template <class T>
Signature validate_metric(const Lattice& lat, const MetricField<T>& m) {
  if (m.order() != lat.order()) throw Error(errc::kSchema, "metric is not defined on every site");
  Signature sig;
  for (Elem g = 0; g < lat.order(); ++g) {
    const auto& mg = m[g];
    if (mg.rows() != lat.n() || mg.cols() != lat.n())
      throw Error(errc::kSchema, "metric at site " + lat.group().name(g) + " has wrong shape");
    if (!mg.is_symmetric()) throw Error(errc::kAsymmetric, "asymmetric at site " + lat.group().name(g));
    auto [p, q, z] = inertia(mg);
    if (z != 0) throw Error(errc::kSingular, "singular at site " + lat.group().name(g));
    sig.per_site.emplace_back(p, q);
  }
  for (const auto& s : sig.per_site) sig.constant = sig.constant && s == sig.per_site.front();
  return sig;
}

template <class T>
MatrixField<T> inverse_metric(const Lattice& lat, const MetricField<T>& m) {
  MatrixField<T> out;
  out.reserve(lat.order());
  for (Elem g = 0; g < lat.order(); ++g) {
    auto inv = inverse(m[g]);
    if (!inv) throw Error(errc::kSingular, "singular at site " + lat.group().name(g));
    out.push_back(*inv);
  }
  return out;
}

// Permutation matrix of ad(h): column k has its 1 in row ad(h)k.
template <class T>
Matrix<T> ad_permutation(const Lattice& lat, int a) {
  Matrix<T> p(lat.n(), lat.n());
  for (int k = 0; k < lat.n(); ++k) p(lat.ad(a, k), k) = Num<T>::one();
  return p;
}

template <class T>
struct KillingResult {
  bool ok = true;
  double max_residual = 0;
  std::vector<Matrix<T>> residual;  // per site
};

// g(gh)_{h1,h2} == g(g)_{ad(h)h1, ad(h)h2} for all sites g.
template <class T>
KillingResult<T> killing_check(const Lattice& lat, const MetricField<T>& m, int a) {
  KillingResult<T> res;
  for (Elem g = 0; g < lat.order(); ++g) {
    const auto& next = m[lat.step(g, a)];
    Matrix<T> r(lat.n(), lat.n());
    for (int i = 0; i < lat.n(); ++i)
      for (int j = 0; j < lat.n(); ++j) r(i, j) = next(i, j) - m[g](lat.ad(a, i), lat.ad(a, j));
    res.ok = res.ok && r.is_zero();
    res.max_residual = std::max(res.max_residual, r.max_abs());
    res.residual.push_back(std::move(r));
  }
  return res;
}

// Breadth-first propagation g(gh) = P_h^T g(g) P_h from the identity; every revisit
// must agree with the stored value.
template <class T>
MetricField<T> right_invariant_extension(const Lattice& lat, const Matrix<T>& seed) {
  if (!seed.is_symmetric()) throw Error(errc::kAsymmetric, "seed metric is asymmetric");
  if (!inverse(seed)) throw Error(errc::kSingular, "seed metric is singular");
  std::vector<std::optional<Matrix<T>>> val(lat.order());
  const Elem e = lat.group().identity();
  val[e] = seed;
  std::queue<Elem> q;
  q.push(e);
  std::vector<Matrix<T>> perms;
  for (int a = 0; a < lat.n(); ++a) perms.push_back(ad_permutation<T>(lat, a));
  while (!q.empty()) {
    Elem g = q.front();
    q.pop();
    for (int a = 0; a < lat.n(); ++a) {
      Matrix<T> next = perms[a].transpose() * (*val[g]) * perms[a];
      Elem x = lat.step(g, a);
      if (!val[x]) {
        val[x] = next;
        q.push(x);
      } else if (!val[x]->approx_equal(next)) {
        throw Error(errc::kInconsistent, "right-invariant propagation inconsistent at site " +
                                             lat.group().name(x));
      }
    }
  }
  MetricField<T> out;
  for (Elem g = 0; g < lat.order(); ++g) {
    if (!val[g])
      throw Error(errc::kInconsistent, "arrows do not generate the group; site " + lat.group().name(g) +
                                           " unreachable");
    out.g.push_back(*val[g]);
  }
  return out;
}

struct InvarianceClass {
  bool left = false;
  bool right = false;
  bool bi = false;
  bool ad_invariant = false;
};

template <class T>
InvarianceClass invariance_class(const Lattice& lat, const MetricField<T>& m) {
  InvarianceClass c;
  c.left = true;
  for (Elem g = 0; g < lat.order(); ++g) c.left = c.left && m[g].approx_equal(m[0]);
  c.right = true;
  for (int a = 0; a < lat.n(); ++a) c.right = c.right && killing_check(lat, m, a).ok;
  c.ad_invariant = true;
  for (Elem g = 0; g < lat.order(); ++g)
    for (int a = 0; a < lat.n(); ++a)
      for (int i = 0; i < lat.n(); ++i)
        for (int j = 0; j < lat.n(); ++j)
          c.ad_invariant = c.ad_invariant && Num<T>::equal(m[g](i, j), m[g](lat.ad(a, i), lat.ad(a, j)));
  c.bi = c.left && c.right && c.ad_invariant;
  return c;
}

}  // namespace cayley
