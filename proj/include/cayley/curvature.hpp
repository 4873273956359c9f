#pragma once

#include <vector>

#include "cayley/connection.hpp"

namespace cayley {

// Torsion and curvature components indexed by the cap pair (h1, h2) of the 2-form
// theta^{h1} cap theta^{h2}.  Quadrangle entries hold the canonical components, which
// sum to zero over every chain.

template <class T>
using VectorField = std::vector<std::vector<T>>;  // [site][h]

template <class T>
struct TorsionComponents {
  int n = 0;
  std::vector<VectorField<T>> Q;  // [h1 * n + h2][site][h]
  const std::vector<T>& at(int h1, int h2, Elem g) const { return Q[h1 * n + h2][g]; }
  bool is_zero() const {
    for (const auto& f : Q)
      for (const auto& v : f)
        if (!is_zero_vector(v)) return false;
    return true;
  }
};

template <class T>
struct CurvatureComponents {
  int n = 0;
  std::vector<MatrixField<T>> R;  // [h1 * n + h2][site], row h, column h'
  const Matrix<T>& at(int h1, int h2, Elem g) const { return R[h1 * n + h2][g]; }
  // R^h_{h', h1, h2}(g)
  const T& component(int h, int hp, int h1, int h2, Elem g) const { return R[h1 * n + h2][g](h, hp); }
  bool is_zero() const {
    for (const auto& f : R)
      for (const auto& m : f)
        if (!m.is_zero()) return false;
    return true;
  }
};

// e_a + V_a(g)[:, b] for the product pair (a, b).
template <class T>
std::vector<T> torsion_term(const Lattice& lat, const Connection<T>& c, int a, int b, Elem g) {
  return unit_vector<T>(lat.n(), a) + c.at(a, g).column(b);
}

// Q_(g) difference for two product pairs from the same quadrangle chain.
template <class T>
std::vector<T> torsion_difference(const Lattice& lat, const Connection<T>& c, std::pair<int, int> p,
                                  std::pair<int, int> q, Elem g) {
  return torsion_term(lat, c, p.first, p.second, g) - torsion_term(lat, c, q.first, q.second, g);
}

template <class T>
TorsionComponents<T> torsion(const Lattice& lat, const Connection<T>& c) {
  const int n = lat.n();
  TorsionComponents<T> tc;
  tc.n = n;
  tc.Q.assign(n * n, VectorField<T>(lat.order()));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto [a, b] = lat.cap_to_product(x, y);
      const auto& pc = lat.product_class(a, b);
      for (Elem g = 0; g < lat.order(); ++g) {
        std::vector<T> q = torsion_term(lat, c, a, b, g);
        if (pc.sector == Sector::Triangle) {
          q = q - unit_vector<T>(n, pc.product);
        } else if (pc.sector == Sector::Quadrangle) {
          const auto& chain = lat.chains()[pc.chain];
          q = scaled(q, Num<T>::from_int(chain.length()));
          for (auto [ha, hb] : chain.pairs) q = q - torsion_term(lat, c, ha, hb, g);
        }
        tc.Q[x * n + y][g] = std::move(q);
      }
    }
  return tc;
}

// V_a(g) V_b(g h_a)
template <class T>
Matrix<T> two_step(const Lattice& lat, const Connection<T>& c, int a, int b, Elem g) {
  return c.at(a, g) * c.at(b, lat.step(g, a));
}

// Column relabeling X(h, h') <- X(h, perm(h')).
template <class T>
Matrix<T> shift_columns(const Lattice& lat, const Matrix<T>& x, Elem conj) {
  // column h' of the result is column g^-1 h' g of x, with g = conj
  const auto& grp = lat.group();
  Matrix<T> out(x.rows(), x.cols());
  for (int hp = 0; hp < lat.n(); ++hp) {
    int src = lat.arrow_index(grp.ad(grp.inv(conj), lat.arrow(hp)));
    for (int r = 0; r < x.rows(); ++r) out(r, hp) = x(r, src);
  }
  return out;
}

// R_(g) difference for two product pairs of the same quadrangle chain.
template <class T>
Matrix<T> curvature_difference(const Lattice& lat, const Connection<T>& c, std::pair<int, int> p,
                               std::pair<int, int> q, Elem g) {
  Elem prod = lat.group().mul(lat.arrow(p.first), lat.arrow(p.second));
  Matrix<T> d = two_step(lat, c, p.first, p.second, g) - two_step(lat, c, q.first, q.second, g);
  return shift_columns(lat, d, prod);
}

template <class T>
CurvatureComponents<T> curvature(const Lattice& lat, const Connection<T>& c) {
  const int n = lat.n();
  CurvatureComponents<T> cc;
  cc.n = n;
  cc.R.assign(n * n, MatrixField<T>(lat.order()));
  const Matrix<T> id = Matrix<T>::identity(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto [a, b] = lat.cap_to_product(x, y);
      const auto& pc = lat.product_class(a, b);
      for (Elem g = 0; g < lat.order(); ++g) {
        Matrix<T> m = two_step(lat, c, a, b, g);
        Matrix<T> r;
        if (pc.sector == Sector::Biangle) {
          r = m - id;
        } else if (pc.sector == Sector::Triangle) {
          r = shift_columns(lat, m - c.at(pc.product, g), lat.arrow(pc.product));
        } else {
          const auto& chain = lat.chains()[pc.chain];
          Matrix<T> acc = m * Num<T>::from_int(chain.length());
          for (auto [ha, hb] : chain.pairs) acc -= two_step(lat, c, ha, hb, g);
          r = shift_columns(lat, acc, chain.g);
        }
        cc.R[x * n + y][g] = std::move(r);
      }
    }
  return cc;
}

template <class T>
struct RicciResult {
  MatrixField<T> ric;          // Ric_{h,h'} = sum_{h''} R^{h''}_{h, h'', h'}
  MatrixField<T> alternative;  // sum_{h''} R^{h''}_{h, h', h''}
  MatrixField<T> diagnostic;   // sum_{h''} R^{h''}_{h'', h, h'}
};

template <class T>
RicciResult<T> ricci(const Lattice& lat, const CurvatureComponents<T>& cc) {
  const int n = lat.n();
  RicciResult<T> r;
  for (Elem g = 0; g < lat.order(); ++g) {
    Matrix<T> ric(n, n), alt(n, n), diag(n, n);
    for (int h = 0; h < n; ++h)
      for (int hp = 0; hp < n; ++hp)
        for (int k = 0; k < n; ++k) {
          ric(h, hp) += cc.component(k, h, k, hp, g);
          alt(h, hp) += cc.component(k, h, hp, k, g);
          diag(h, hp) += cc.component(k, k, h, hp, g);
        }
    r.ric.push_back(std::move(ric));
    r.alternative.push_back(std::move(alt));
    r.diagnostic.push_back(std::move(diag));
  }
  return r;
}

// R(g) = sum (g^-1)^{h,h'} Ric_{h,h'}
template <class T>
ScalarField<T> curvature_scalar(const Lattice& lat, const MetricField<T>& m, const MatrixField<T>& ric) {
  auto hinv = inverse_metric(lat, m);
  ScalarField<T> out(lat.order());
  for (Elem g = 0; g < lat.order(); ++g)
    for (int h = 0; h < lat.n(); ++h)
      for (int hp = 0; hp < lat.n(); ++hp) out[g] += hinv[g](h, hp) * ric[g](h, hp);
  return out;
}

template <class T>
struct IsometryEntry {
  Sector sector;
  std::pair<int, int> pair;      // product pair (a, b)
  std::pair<int, int> partner;   // quadrangles: the other product pair
  Elem site;
  Matrix<T> M;
  bool isometry = false;
  bool reconstructs = false;  // (M - I) X matches the curvature module
};

// B = V_a R*V_b (biangle), T = V_a R*V_b V_{h0}^-1 (triangle),
// K = V_a R*V_b (V_a' R*V_b')^-1 (quadrangle, every ordered pair of chain members).
template <class T>
std::vector<IsometryEntry<T>> integrability_isometries(const Lattice& lat, const MetricField<T>& m,
                                                       const Connection<T>& c) {
  if (!is_compatible(lat, m, c)) throw Error(errc::kNotCompatible, "connection is not metric-compatible");
  const int n = lat.n();
  const Matrix<T> id = Matrix<T>::identity(n);
  auto cc = curvature(lat, c);
  auto inv_or_throw = [&](const Matrix<T>& x, Elem g) {
    auto i = inverse(x);
    if (!i) throw Error(errc::kSingular, "singular transport at site " + lat.group().name(g));
    return *i;
  };
  std::vector<IsometryEntry<T>> out;
  for (Elem g = 0; g < lat.order(); ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& pc = lat.product_class(a, b);
        Matrix<T> w = two_step(lat, c, a, b, g);
        auto [x, y] = lat.product_to_cap(a, b);
        if (pc.sector == Sector::Biangle) {
          IsometryEntry<T> e{pc.sector, {a, b}, {a, b}, g, w};
          e.isometry = (w.transpose() * m[g] * w).approx_equal(m[g]);
          e.reconstructs = (w - id).approx_equal(cc.at(x, y, g));
          out.push_back(std::move(e));
        } else if (pc.sector == Sector::Triangle) {
          const Matrix<T>& v0 = c.at(pc.product, g);
          Matrix<T> t = w * inv_or_throw(v0, g);
          IsometryEntry<T> e{pc.sector, {a, b}, {a, b}, g, t};
          e.isometry = (t.transpose() * m[g] * t).approx_equal(m[g]);
          e.reconstructs = shift_columns(lat, (t - id) * v0, lat.arrow(pc.product)).approx_equal(cc.at(x, y, g));
          out.push_back(std::move(e));
        } else {
          const auto& chain = lat.chains()[pc.chain];
          for (auto other : chain.pairs) {
            if (other == std::make_pair(a, b)) continue;
            Matrix<T> w2 = two_step(lat, c, other.first, other.second, g);
            Matrix<T> k = w * inv_or_throw(w2, g);
            IsometryEntry<T> e{pc.sector, {a, b}, other, g, k};
            e.isometry = (k.transpose() * m[g] * k).approx_equal(m[g]);
            e.reconstructs = shift_columns(lat, (k - id) * w2, chain.g)
                                 .approx_equal(curvature_difference(lat, c, {a, b}, other, g));
            out.push_back(std::move(e));
          }
        }
      }
  return out;
}

// --- tensors evaluated on basic vector fields ------------------------------------

// Basic vector field: one arrow index per site.
using BasicVectorField = std::vector<int>;

namespace detail {

// Component vector of a basic field.
template <class T>
std::vector<T> basic_components(int n, int arrow) {
  return unit_vector<T>(n, arrow);
}

// (V~_X R_{X*} Y)(g) = sum_{h1,h2} X^{h1}(g) Y^{ad(h1)h2}(g) V_{h1}(g)[:, h2]
template <class T>
std::vector<T> transport_pushed(const Lattice& lat, const Connection<T>& c, const std::vector<T>& X,
                                const std::vector<T>& Y, Elem g) {
  const int n = lat.n();
  std::vector<T> out(n, Num<T>::zero());
  for (int h1 = 0; h1 < n; ++h1) {
    if (Num<T>::is_zero(X[h1])) continue;
    for (int h2 = 0; h2 < n; ++h2) {
      T coeff = X[h1] * Y[lat.ad(h1, h2)];
      if (Num<T>::is_zero(coeff)) continue;
      out = out + scaled(c.at(h1, g).column(h2), coeff);
    }
  }
  return out;
}

// (V~_X V~_{R_{X*}Y} U)(g) for basic X, Y with the field U given by its basic value
// `u` at the site g h_a h_b reached by the two steps.
template <class T>
std::vector<T> double_transport(const Lattice& lat, const Connection<T>& c, int x, int y, int u, Elem g) {
  int b = lat.ad_inv(x, y);  // R_{X*}Y at g h_x
  return two_step(lat, c, x, b, g).column(u);
}

}  // namespace detail

template <class T>
VectorField<T> torsion_on_fields(const Lattice& lat, const Connection<T>& c, const BasicVectorField& X,
                                 const BasicVectorField& Y) {
  const int n = lat.n();
  VectorField<T> out(lat.order());
  auto term = [&](int x, int y, Elem g) {
    auto xv = detail::basic_components<T>(n, x);
    return xv + detail::transport_pushed(lat, c, xv, detail::basic_components<T>(n, y), g);
  };
  for (Elem g = 0; g < lat.order(); ++g) {
    int x = X[g], y = Y[g];
    Elem prod = lat.group().mul(lat.arrow(y), lat.arrow(x));
    std::vector<T> v = term(x, y, g);
    if (prod == lat.group().identity()) {
      // biangle: nothing to subtract
    } else if (lat.arrow_index(prod) >= 0) {
      v = v - detail::basic_components<T>(n, lat.arrow_index(prod));
    } else {
      // Sum of four-field differences over every (X^, Y^) with the same product.
      std::vector<T> acc(n, Num<T>::zero());
      for (int xh = 0; xh < n; ++xh)
        for (int yh = 0; yh < n; ++yh) {
          if (lat.group().mul(lat.arrow(yh), lat.arrow(xh)) != prod) continue;
          acc = acc + (v - term(xh, yh, g));
        }
      v = acc;
    }
    out[g] = std::move(v);
  }
  return out;
}

template <class T>
VectorField<T> curvature_on_fields(const Lattice& lat, const Connection<T>& c, const BasicVectorField& X,
                                   const BasicVectorField& Y, const BasicVectorField& Z) {
  const int n = lat.n();
  VectorField<T> out(lat.order());
  for (Elem g = 0; g < lat.order(); ++g) {
    int x = X[g], y = Y[g], z = Z[g];
    Elem prod = lat.group().mul(lat.arrow(y), lat.arrow(x));
    if (prod == lat.group().identity()) {
      out[g] = detail::double_transport(lat, c, x, y, z, g) - detail::basic_components<T>(n, z);
    } else if (int w = lat.arrow_index(prod); w >= 0) {
      int pushed = lat.ad_inv(w, z);  // R_{W*}Z at g h_w
      out[g] = detail::double_transport(lat, c, x, y, pushed, g) - c.at(w, g).column(pushed);
    } else {
      // Push Z along X, then along R_{X*}Y.
      int b = lat.ad_inv(x, y);
      int pushed = lat.ad_inv(b, lat.ad_inv(x, z));
      std::vector<T> first = detail::double_transport(lat, c, x, y, pushed, g);
      std::vector<T> acc(n, Num<T>::zero());
      for (int xh = 0; xh < n; ++xh)
        for (int yh = 0; yh < n; ++yh) {
          if (lat.group().mul(lat.arrow(yh), lat.arrow(xh)) != prod) continue;
          acc = acc + (first - detail::double_transport(lat, c, xh, yh, pushed, g));
        }
      out[g] = std::move(acc);
    }
  }
  return out;
}

// Frame-bundle route for |S| = 2: the curvature 2-form on the cap pair (first, second)
// built from L_h = E V_h Ebar and the transfer matrix calE_(p) = sum_h' (R*_p E)_{h'} Ebar^{ad(p)h'},
// lowered with eta and antisymmetrized.  Second entry: R sqrt(det g) from the Ricci route.
struct DensityPair {
  ScalarField<double> frame;
  ScalarField<double> scalar;
};

template <class T>
DensityPair einstein_hilbert_density(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c) {
  if (lat.n() != 2) throw Error(errc::kUnsupported, "Einstein-Hilbert density needs exactly two arrows");
  auto sig = validate_metric(lat, m);
  for (const auto& s : sig.per_site)
    if (s.second != 0) throw Error(errc::kSignature, "Einstein-Hilbert density needs a positive-definite metric");
  const auto& grp = lat.group();
  Coframe cf = build_coframe(lat, m);
  auto L = frame_connection(lat, cf, c);
  auto lstep = [&](int a, int b, Elem g) { return L[a][g] * L[b][lat.step(g, a)]; };
  auto transfer = [&](Elem p, Elem g) {
    Matrix<double> out(2, 2);
    const auto& Ep = cf.E[grp.mul(g, p)];
    const auto& Eb = cf.Ebar[g];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int hp = 0; hp < 2; ++hp) out(a, b) += Ep(a, hp) * Eb(lat.arrow_index(grp.ad(p, lat.arrow(hp))), b);
    return out;
  };
  auto [a, b] = lat.cap_to_product(0, 1);
  const auto& pc = lat.product_class(a, b);

  DensityPair out{ScalarField<double>(lat.order()), ScalarField<double>(lat.order())};
  for (Elem g = 0; g < lat.order(); ++g) {
    Matrix<double> frame;
    if (pc.sector == Sector::Biangle) {
      frame = (lstep(a, b, g) - Matrix<double>::identity(2)) * transfer(grp.identity(), g);
    } else if (pc.sector == Sector::Triangle) {
      frame = (lstep(a, b, g) - L[pc.product][g]) * transfer(lat.arrow(pc.product), g);
    } else {
      const auto& chain = lat.chains()[pc.chain];
      Matrix<double> acc = lstep(a, b, g) * static_cast<double>(chain.length());
      for (auto [ha, hb] : chain.pairs) acc -= lstep(ha, hb, g);
      frame = acc * transfer(chain.g, g);
    }
    Matrix<double> low = cf.eta * frame;
    out.frame[g] = low(0, 1) - low(1, 0);
  }
  auto md = MetricField<double>();
  for (const auto& x : m.g) md.g.push_back(x.template cast<double>());
  auto cd = c.template cast<double>();
  auto ric = ricci(lat, curvature(lat, cd));
  auto R = curvature_scalar(lat, md, ric.ric);
  for (Elem g = 0; g < lat.order(); ++g) out.scalar[g] = R[g] * std::sqrt(determinant(md[g]));
  return out;
}

}  // namespace cayley
