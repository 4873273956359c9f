#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cayley/metric.hpp"

namespace cayley {

// Transport matrices V_h(g), indexed V[arrow][site].  Entry (row k, column j) is the
// component V^k_{h,j}: transporting the basis vector l_j from gh back to g gives
// sum_k V^k_{h,j} l_k.
template <class T>
struct Connection {
  std::vector<MatrixField<T>> V;

  Connection() = default;
  explicit Connection(std::vector<MatrixField<T>> v) : V(std::move(v)) {}

  static Connection constant(int order, const std::vector<Matrix<T>>& per_arrow) {
    Connection c;
    for (const auto& m : per_arrow) c.V.emplace_back(order, m);
    return c;
  }
  static Connection identity(const Lattice& lat) {
    return constant(lat.order(), std::vector<Matrix<T>>(lat.n(), Matrix<T>::identity(lat.n())));
  }

  const Matrix<T>& at(int a, Elem g) const { return V[a][g]; }
  Matrix<T>& at(int a, Elem g) { return V[a][g]; }
  int n() const { return static_cast<int>(V.size()); }
  bool is_constant() const {
    for (const auto& f : V)
      for (const auto& m : f)
        if (!(m == f.front())) return false;
    return true;
  }
  friend bool operator==(const Connection& a, const Connection& b) { return a.V == b.V; }

  template <class U>
  Connection<U> cast() const {
    Connection<U> out;
    for (const auto& f : V) {
      MatrixField<U> mf;
      for (const auto& m : f) mf.push_back(m.template cast<U>());
      out.V.push_back(std::move(mf));
    }
    return out;
  }
};

template <class T>
void check_shapes(const Lattice& lat, const Connection<T>& c) {
  if (c.n() != lat.n()) throw Error(errc::kArrowMismatch, "connection arrow count differs from lattice");
  for (const auto& f : c.V) {
    if (static_cast<int>(f.size()) != lat.order())
      throw Error(errc::kSchema, "connection is not defined on every site");
    for (const auto& m : f)
      if (m.rows() != lat.n() || m.cols() != lat.n())
        throw Error(errc::kSchema, "transport matrix has wrong shape");
  }
}

// residual[g][a] = g(g h_a) - V_a(g)^T g(g) V_a(g)
template <class T>
std::vector<std::vector<Matrix<T>>> compatibility_residual(const Lattice& lat, const MetricField<T>& m,
                                                           const Connection<T>& c) {
  std::vector<std::vector<Matrix<T>>> res(lat.order());
  for (Elem g = 0; g < lat.order(); ++g)
    for (int a = 0; a < lat.n(); ++a) {
      const auto& v = c.at(a, g);
      res[g].push_back(m[lat.step(g, a)] - v.transpose() * m[g] * v);
    }
  return res;
}

template <class T>
bool is_compatible(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c) {
  for (const auto& site : compatibility_residual(lat, m, c))
    for (const auto& r : site)
      if (!r.is_zero()) return false;
  return true;
}

template <class T>
double max_residual(const std::vector<std::vector<Matrix<T>>>& res) {
  double worst = 0;
  for (const auto& site : res)
    for (const auto& r : site) worst = std::max(worst, r.max_abs());
  return worst;
}

// Inner products of transported basis vectors at g against the metric at gh,
// evaluated entry by entry.
template <class T>
bool isometry_preservation_check(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c) {
  const int n = lat.n();
  for (Elem g = 0; g < lat.order(); ++g)
    for (int a = 0; a < n; ++a) {
      const auto& v = c.at(a, g);
      const auto& far = m[lat.step(g, a)];
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) {
          T ip = Num<T>::zero();
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) ip += v(k, j1) * m[g](k, l) * v(l, j2);
          if (!Num<T>::equal(ip, far(j1, j2))) return false;
        }
    }
  return true;
}

// Isometry gauge J[a][g]: J^T g(g) J = g(g).
template <class T>
Connection<T> apply_gauge(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c,
                          const std::vector<MatrixField<T>>& J) {
  Connection<T> out = c;
  for (int a = 0; a < lat.n(); ++a)
    for (Elem g = 0; g < lat.order(); ++g) {
      const auto& j = J[a][g];
      if (!(j.transpose() * m[g] * j).approx_equal(m[g]))
        throw Error(errc::kNotIsometry, "gauge matrix is not an isometry at site " + lat.group().name(g));
      out.at(a, g) = j * c.at(a, g);
    }
  return out;
}

// V_{h1}(g) V_{h2}(g h1) ... V_{hr}(g h1...h_{r-1})
template <class T>
Matrix<T> transport_matrix(const Lattice& lat, const Connection<T>& c, Elem base, const std::vector<int>& path) {
  Matrix<T> m = Matrix<T>::identity(lat.n());
  Elem g = base;
  for (int a : path) {
    m = m * c.at(a, g);
    g = lat.step(g, a);
  }
  return m;
}

// Components at the base of the arrow `target` attached at the end of `path`.
template <class T>
std::vector<T> backward_transport(const Lattice& lat, const Connection<T>& c, Elem base,
                                  const std::vector<int>& path, int target) {
  if (path.empty()) throw std::invalid_argument("backward_transport needs a non-empty path");
  return transport_matrix(lat, c, base, path).column(target);
}

// R*_h hinv - U_h hinv U_h^T with U_h = V_h^-1 and hinv the inverse metric.
template <class T>
std::vector<std::vector<Matrix<T>>> contravariant_residual(const Lattice& lat, const MetricField<T>& m,
                                                           const Connection<T>& c) {
  auto hinv = inverse_metric(lat, m);
  std::vector<std::vector<Matrix<T>>> res(lat.order());
  for (Elem g = 0; g < lat.order(); ++g)
    for (int a = 0; a < lat.n(); ++a) {
      auto u = inverse(c.at(a, g));
      if (!u)
        throw Error(errc::kSingular, "transport matrix for arrow " + lat.arrow_name(a) + " singular at site " +
                                         lat.group().name(g));
      res[g].push_back(hinv[lat.step(g, a)] - (*u) * hinv[g] * u->transpose());
    }
  return res;
}

// V_h = P_h, compatible with every right-invariant metric.
template <class T>
Connection<T> natural_connection(const Lattice& lat, const MetricField<T>& m) {
  if (!invariance_class(lat, m).right) throw Error(errc::kNotRightInvariant, "metric is not right-invariant");
  std::vector<Matrix<T>> per;
  for (int a = 0; a < lat.n(); ++a) per.push_back(ad_permutation<T>(lat, a));
  return Connection<T>::constant(lat.order(), per);
}

// --- orthonormal coframes (float; square roots appear) -----------------------------

struct Factorization {
  Matrix<double> E;    // rows a, columns h
  Matrix<double> eta;  // diagonal, +1 entries first
};

// g = E^T eta E.  Positive-definite input: upper-triangular E with positive diagonal
// (Cholesky).  Indefinite input: unpivoted LDL^T when all pivots are nonzero, otherwise
// the symmetric eigendecomposition; rows are then ordered + before -.
Factorization factor_metric(const Matrix<double>& g);

struct Coframe {
  std::vector<Matrix<double>> E;
  std::vector<Matrix<double>> Ebar;
  Matrix<double> eta;
};

template <class T>
Coframe build_coframe(const Lattice& lat, const MetricField<T>& m) {
  auto sig = validate_metric(lat, m);
  if (!sig.constant) throw Error(errc::kSignature, "metric signature is not constant over the group");
  Coframe cf;
  for (Elem g = 0; g < lat.order(); ++g) {
    auto f = factor_metric(m[g].template cast<double>());
    cf.E.push_back(f.E);
    cf.Ebar.push_back(*inverse(f.E));
    cf.eta = f.eta;
  }
  return cf;
}

// L_h(g) = E(g) V_h(g) Ebar(g h)
template <class T>
std::vector<MatrixField<double>> frame_connection(const Lattice& lat, const Coframe& cf, const Connection<T>& c) {
  std::vector<MatrixField<double>> L(lat.n());
  for (int a = 0; a < lat.n(); ++a)
    for (Elem g = 0; g < lat.order(); ++g)
      L[a].push_back(cf.E[g] * c.at(a, g).template cast<double>() * cf.Ebar[lat.step(g, a)]);
  return L;
}

// Rotation angle of a 2x2 special-orthogonal matrix.
inline double rotation_angle(const Matrix<double>& m) { return std::atan2(m(1, 0), m(0, 0)); }

}  // namespace cayley
