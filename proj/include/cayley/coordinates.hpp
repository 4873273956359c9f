#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cayley/curvature.hpp"

namespace cayley {

// Injective (x^mu) with the matrix (ell_h x^mu) invertible at every site.
template <class T>
bool coordinates_valid(const Lattice& lat, const std::vector<ScalarField<T>>& x) {
  if (static_cast<int>(x.size()) != lat.n()) return false;
  std::set<std::vector<double>> seen;
  for (Elem g = 0; g < lat.order(); ++g) {
    std::vector<double> p;
    for (const auto& f : x) p.push_back(Num<T>::to_double(f[g]));
    if (!seen.insert(p).second) return false;
  }
  for (Elem g = 0; g < lat.order(); ++g) {
    Matrix<T> j(lat.n(), lat.n());
    for (int mu = 0; mu < lat.n(); ++mu)
      for (int h = 0; h < lat.n(); ++h) j(mu, h) = ell_derivative(lat, h, x[mu])[g];
    if (!inverse(j)) return false;
  }
  return true;
}

// --- (Z4, {1,2}) ---------------------------------------------------------------------

struct Z4Coordinates {
  Lattice lat;
  ScalarField<Rational> x, y;
  std::vector<Matrix<Rational>> jacobian;  // per site: row mu, column h, entries ell_h x^mu
};

Z4Coordinates z4_coordinates();

struct CheckItem {
  std::string name;
  bool ok = false;
};

// Injectivity, Jacobian formula and invertibility, x^2 = y^2 = 1, the four pullback rules
// and the printed differentials.
std::vector<CheckItem> z4_coordinate_checks(const Z4Coordinates& s);

// f evaluated at the site whose coordinates are (X(g), Y(g)), for every g.
ScalarField<Rational> z4_compose(const Z4Coordinates& s, const ScalarField<Rational>& f,
                                 const ScalarField<Rational>& X, const ScalarField<Rational>& Y);

// f(x, xy) through ((x+1) f(x,y) - (x-1) f(x,-y)) / 2.
ScalarField<Rational> z4_substitute_xxy(const Z4Coordinates& s, const ScalarField<Rational>& f);

struct Z4Partials {
  ScalarField<Rational> dx, dy;
};

Z4Partials z4_partial_derivatives(const Z4Coordinates& s, const ScalarField<Rational>& f);

// [dx,x] = -2x dx, [dy,y] = -2y dy, [dx,y] = (x-1)y dx, [dy,x] = (x-1)y dx.
std::vector<CheckItem> z4_commutation_check(const Z4Coordinates& s);

// --- hypercubic lattices ---------------------------------------------------------------

template <class T>
struct HypercubicSystem {
  const Lattice* lat = nullptr;
  T kappa;
  std::vector<ScalarField<T>> x;                // x^mu = kappa a^mu, a^mu in {0..m-1}
  std::vector<std::vector<bool>> wraps;         // [mu][site]: stepping along mu leaves the domain
};

template <class T>
HypercubicSystem<T> hypercubic_calculus(const Lattice& lat, const T& kappa) {
  if (!lat.hypercubic()) throw Error(errc::kUnsupported, "hypercubic calculus needs a torus with unit arrows");
  if (Num<T>::is_zero(kappa)) throw Error(errc::kDegenerate, "lattice spacing must be nonzero");
  HypercubicSystem<T> s{&lat, kappa, {}, {}};
  const auto& mod = lat.group().moduli();
  for (int mu = 0; mu < lat.n(); ++mu) {
    ScalarField<T> f(lat.order());
    std::vector<bool> w(lat.order());
    for (Elem g = 0; g < lat.order(); ++g) {
      int a = lat.group().coords(g)[mu];
      f[g] = kappa * Num<T>::from_int(a);
      w[g] = a == mod[mu] - 1;
    }
    s.x.push_back(std::move(f));
    s.wraps.push_back(std::move(w));
  }
  return s;
}

// d_{+mu} f = (R*_mu f - f) / kappa
template <class T>
ScalarField<T> partial(const HypercubicSystem<T>& s, int mu, const ScalarField<T>& f) {
  ScalarField<T> out = ell_derivative(*s.lat, mu, f);
  for (auto& v : out.v) v = v / s.kappa;
  return out;
}

// Gamma^mu_{rho nu} = (V^mu_{rho nu} - delta^mu_nu) / kappa, stored [site][(mu n + rho) n + nu].
template <class T>
struct ChristoffelField {
  int n = 0;
  std::vector<std::vector<T>> gamma;
  const T& at(int mu, int rho, int nu, Elem g) const { return gamma[g][(mu * n + rho) * n + nu]; }
};

template <class T>
ChristoffelField<T> christoffel(const HypercubicSystem<T>& s, const Connection<T>& c) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  ChristoffelField<T> out{n, std::vector<std::vector<T>>(lat.order(), std::vector<T>(n * n * n))};
  for (Elem g = 0; g < lat.order(); ++g)
    for (int mu = 0; mu < n; ++mu)
      for (int rho = 0; rho < n; ++rho)
        for (int nu = 0; nu < n; ++nu) {
          T v = c.at(rho, g)(mu, nu);
          if (mu == nu) v -= Num<T>::one();
          out.gamma[g][(mu * n + rho) * n + nu] = v / s.kappa;
        }
  return out;
}

// Q^mu_{nu rho} = Gamma^mu_{nu rho} - Gamma^mu_{rho nu}, same layout as ChristoffelField.
template <class T>
ChristoffelField<T> coordinate_torsion(const HypercubicSystem<T>& s, const Connection<T>& c) {
  auto G = christoffel(s, c);
  auto Q = G;
  const int n = G.n;
  for (Elem g = 0; g < s.lat->order(); ++g)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho) Q.gamma[g][(mu * n + nu) * n + rho] = G.at(mu, nu, rho, g) - G.at(mu, rho, nu, g);
  return Q;
}

// R_{rho sigma} = (V_rho R*V_sigma - V_sigma R*V_rho) / kappa^2, stored [rho n + sigma][site].
template <class T>
std::vector<MatrixField<T>> coordinate_curvature(const HypercubicSystem<T>& s, const Connection<T>& c) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  const T k2 = s.kappa * s.kappa;
  std::vector<MatrixField<T>> R(n * n, MatrixField<T>(lat.order()));
  for (int rho = 0; rho < n; ++rho)
    for (int sg = 0; sg < n; ++sg)
      for (Elem g = 0; g < lat.order(); ++g) {
        Matrix<T> m = two_step(lat, c, rho, sg, g) - two_step(lat, c, sg, rho, g);
        R[rho * n + sg][g] = m * (Num<T>::one() / k2);
      }
  return R;
}

struct BianchiReport {
  double first = 0;          // max residual of the torsion form of the first identity
  double second = 0;         // max residual of V_[nu R* R_rho sigma] = R_[nu rho R* V_sigma]
  bool torsion_free = false;
  double cyclic = 0;         // max |R^mu_[nu rho sigma]|, torsion-free connections only
  bool metric_given = false;
  double isometry = 0;       // max |K^T g K - g|
  double reconstruction = 0; // max |R_mu nu - (K - I) V_nu R*V_mu / kappa^2|
  bool ok(double tol) const {
    return first <= tol && second <= tol && cyclic <= tol && isometry <= tol && reconstruction <= tol;
  }
};

template <class T>
BianchiReport bianchi_hypercubic(const HypercubicSystem<T>& s, const Connection<T>& c,
                                 const MetricField<T>* m = nullptr) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  auto Q = coordinate_torsion(s, c);
  auto R = coordinate_curvature(s, c);
  auto comp = [&](int mu, int nu, int rho, int sg, Elem g) { return R[rho * n + sg][g](mu, nu); };
  BianchiReport rep;
  auto track = [](double& slot, const T& v) { slot = std::max(slot, Num<T>::magnitude(v)); };

  rep.torsion_free = true;
  for (Elem g = 0; g < lat.order(); ++g)
    for (const auto& v : Q.gamma[g]) rep.torsion_free = rep.torsion_free && Num<T>::is_zero(v);

  for (Elem g = 0; g < lat.order(); ++g)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          for (int sg = 0; sg < n; ++sg) {
            const int cyc[3][3] = {{nu, rho, sg}, {rho, sg, nu}, {sg, nu, rho}};
            T lhs = Num<T>::zero(), rhs = Num<T>::zero();
            for (const auto& t : cyc) {
              int a = t[0], b = t[1], d = t[2];
              Elem ga = lat.step(g, a);
              for (int lam = 0; lam < n; ++lam) lhs += c.at(a, g)(mu, lam) * Q.at(lam, b, d, ga);
              lhs -= Q.at(mu, a, b, g);
              rhs += comp(mu, a, b, d, g);
            }
            lhs = lhs / s.kappa;
            track(rep.first, lhs - rhs);
            if (rep.torsion_free) track(rep.cyclic, rhs);
          }

  for (Elem g = 0; g < lat.order(); ++g)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sg = 0; sg < n; ++sg) {
          const int cyc[3][3] = {{nu, rho, sg}, {rho, sg, nu}, {sg, nu, rho}};
          Matrix<T> acc(n, n);
          for (const auto& t : cyc) {
            int a = t[0], b = t[1], d = t[2];
            acc += c.at(a, g) * R[b * n + d][lat.step(g, a)];
            acc -= R[a * n + b][g] * c.at(d, lat.step(lat.step(g, a), b));
          }
          rep.second = std::max(rep.second, acc.max_abs());
        }

  if (m) {
    rep.metric_given = true;
    const T k2 = s.kappa * s.kappa;
    for (Elem g = 0; g < lat.order(); ++g)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          Matrix<T> back = two_step(lat, c, nu, mu, g);
          auto inv = inverse(back);
          if (!inv) throw Error(errc::kSingular, "singular transport around a plaquette at " + lat.group().name(g));
          Matrix<T> K = two_step(lat, c, mu, nu, g) * *inv;
          rep.isometry = std::max(rep.isometry, (K.transpose() * (*m)[g] * K - (*m)[g]).max_abs());
          Matrix<T> rec = (K - Matrix<T>::identity(n)) * back * (Num<T>::one() / k2);
          rep.reconstruction = std::max(rep.reconstruction, (R[mu * n + nu][g] - rec).max_abs());
        }
  }
  return rep;
}

// Coordinates y^mu with Jacobian J^mu_nu = d_{+nu} y^mu, per site.
template <class T>
struct CoordinateTransform {
  std::vector<Matrix<T>> J, Jinv;
};

template <class T>
CoordinateTransform<T> make_transform(const Lattice& lat, std::vector<Matrix<T>> J) {
  CoordinateTransform<T> t;
  for (Elem g = 0; g < lat.order(); ++g) {
    auto inv = inverse(J[g]);
    if (!inv) throw Error(errc::kSingular, "singular Jacobian at site " + lat.group().name(g));
    t.Jinv.push_back(*inv);
  }
  t.J = std::move(J);
  return t;
}

// Jacobian of the functions y on the torus (wraparound differences included).
template <class T>
CoordinateTransform<T> transform_from_functions(const HypercubicSystem<T>& s, const std::vector<ScalarField<T>>& y) {
  const Lattice& lat = *s.lat;
  if (static_cast<int>(y.size()) != lat.n()) throw Error(errc::kUsage, "need one function per coordinate");
  std::set<std::vector<double>> seen;
  for (Elem g = 0; g < lat.order(); ++g) {
    std::vector<double> p;
    for (const auto& f : y) p.push_back(Num<T>::to_double(f[g]));
    if (!seen.insert(p).second) throw Error(errc::kDegenerate, "new coordinates are not injective");
  }
  std::vector<Matrix<T>> J(lat.order(), Matrix<T>(lat.n(), lat.n()));
  for (int mu = 0; mu < lat.n(); ++mu)
    for (int nu = 0; nu < lat.n(); ++nu) {
      auto d = partial(s, nu, y[mu]);
      for (Elem g = 0; g < lat.order(); ++g) J[g](mu, nu) = d[g];
    }
  return make_transform(lat, std::move(J));
}

// y = A x with the constant Jacobian A (the infinite-lattice value).
template <class T>
CoordinateTransform<T> linear_transform(const HypercubicSystem<T>& s, const Matrix<T>& A) {
  return make_transform(*s.lat, std::vector<Matrix<T>>(s.lat->order(), A));
}

// g'_{mu nu} = sum (J^-1)^rho_mu (J^-1)^sigma_nu g_{rho sigma}
template <class T>
MetricField<T> transform_metric(const CoordinateTransform<T>& t, const MetricField<T>& m) {
  MetricField<T> out;
  for (std::size_t g = 0; g < t.J.size(); ++g) out.g.push_back(t.Jinv[g].transpose() * m[g] * t.Jinv[g]);
  return out;
}

// V'_mu(x) = sum_nu (J^-1)^nu_mu(x) J(x) V_nu(x) J^-1(x + kappa nu)
template <class T>
Connection<T> transform_connection(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                                   const Connection<T>& c) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  Connection<T> out;
  out.V.assign(n, MatrixField<T>(lat.order(), Matrix<T>(n, n)));
  for (Elem g = 0; g < lat.order(); ++g)
    for (int nu = 0; nu < n; ++nu) {
      Matrix<T> tn = t.J[g] * c.at(nu, g) * t.Jinv[lat.step(g, nu)];
      for (int mu = 0; mu < n; ++mu) out.at(mu, g) += tn * t.Jinv[g](nu, mu);
    }
  return out;
}

// T'_nu = sum_mu J^mu_nu V'_mu = J V_nu J^-1(x + kappa nu)
template <class T>
Matrix<T> transformed_step(const CoordinateTransform<T>& t, const Connection<T>& vp, int nu, Elem g) {
  const int n = vp.n();
  Matrix<T> out(n, n);
  for (int mu = 0; mu < n; ++mu) out += vp.at(mu, g) * t.J[g](mu, nu);
  return out;
}

// Inverse of transform_connection: V_nu = J^-1(x) T'_nu J(x + kappa nu).
template <class T>
Connection<T> untransform_connection(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                                     const Connection<T>& vp) {
  const Lattice& lat = *s.lat;
  Connection<T> out;
  out.V.assign(lat.n(), MatrixField<T>(lat.order()));
  for (Elem g = 0; g < lat.order(); ++g)
    for (int nu = 0; nu < lat.n(); ++nu)
      out.at(nu, g) = t.Jinv[g] * transformed_step(t, vp, nu, g) * t.J[lat.step(g, nu)];
  return out;
}

// Curvature in y-components computed from the transformed transport matrices.
template <class T>
std::vector<MatrixField<T>> transformed_curvature(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                                                  const Connection<T>& vp) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  const T k2 = s.kappa * s.kappa;
  std::vector<MatrixField<T>> out(n * n, MatrixField<T>(lat.order(), Matrix<T>(n, n)));
  for (Elem g = 0; g < lat.order(); ++g)
    for (int nu = 0; nu < n; ++nu)
      for (int la = 0; la < n; ++la) {
        Elem far = lat.step(lat.step(g, nu), la);
        Matrix<T> loop = transformed_step(t, vp, nu, g) * transformed_step(t, vp, la, lat.step(g, nu)) -
                         transformed_step(t, vp, la, g) * transformed_step(t, vp, nu, lat.step(g, la));
        Matrix<T> local = loop * t.J[far] * t.Jinv[g] * (Num<T>::one() / k2);
        for (int rho = 0; rho < n; ++rho)
          for (int sg = 0; sg < n; ++sg) out[rho * n + sg][g] += local * (t.Jinv[g](nu, rho) * t.Jinv[g](la, sg));
      }
  return out;
}

// Local tensor law: R'_{rho sigma} = sum (J^-1)^nu_rho (J^-1)^la_sigma J R_{nu la} J^-1.
template <class T>
std::vector<MatrixField<T>> tensor_law_curvature(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                                                 const std::vector<MatrixField<T>>& R) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  std::vector<MatrixField<T>> out(n * n, MatrixField<T>(lat.order(), Matrix<T>(n, n)));
  for (Elem g = 0; g < lat.order(); ++g)
    for (int nu = 0; nu < n; ++nu)
      for (int la = 0; la < n; ++la) {
        Matrix<T> conj = t.J[g] * R[nu * n + la][g] * t.Jinv[g];
        for (int rho = 0; rho < n; ++rho)
          for (int sg = 0; sg < n; ++sg) out[rho * n + sg][g] += conj * (t.Jinv[g](nu, rho) * t.Jinv[g](la, sg));
      }
  return out;
}

// d^y_{+nu} f = sum_mu (J^-1)^mu_nu d_{+mu} f
template <class T>
std::vector<ScalarField<T>> transformed_partials(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                                                 const ScalarField<T>& f) {
  const Lattice& lat = *s.lat;
  std::vector<ScalarField<T>> d;
  for (int mu = 0; mu < lat.n(); ++mu) d.push_back(partial(s, mu, f));
  std::vector<ScalarField<T>> out(lat.n(), ScalarField<T>(lat.order()));
  for (int nu = 0; nu < lat.n(); ++nu)
    for (int mu = 0; mu < lat.n(); ++mu)
      for (Elem g = 0; g < lat.order(); ++g) out[nu][g] += t.Jinv[g](mu, nu) * d[mu][g];
  return out;
}

// Max residual of [dy^mu, y^nu] = kappa sum_rho C^{mu nu}_rho dy^rho over the theta basis,
// C^{mu nu}_rho = sum_sigma J^mu_sigma J^nu_sigma (J^-1)^sigma_rho.  The Jacobian must be the
// one of the functions y (transform_from_functions).
template <class T>
double commutator_residual(const HypercubicSystem<T>& s, const CoordinateTransform<T>& t,
                           const std::vector<ScalarField<T>>& y) {
  const Lattice& lat = *s.lat;
  const int n = lat.n();
  double worst = 0;
  std::vector<std::vector<ScalarField<T>>> ell(n);  // ell[mu][h] = ell_h y^mu
  for (int mu = 0; mu < n; ++mu)
    for (int h = 0; h < n; ++h) ell[mu].push_back(ell_derivative(lat, h, y[mu]));
  for (Elem g = 0; g < lat.order(); ++g)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int h = 0; h < n; ++h) {
          T lhs = ell[mu][h][g] * ell[nu][h][g];
          T rhs = Num<T>::zero();
          for (int rho = 0; rho < n; ++rho) {
            T C = Num<T>::zero();
            for (int sg = 0; sg < n; ++sg) C += t.J[g](mu, sg) * t.J[g](nu, sg) * t.Jinv[g](sg, rho);
            rhs += C * ell[rho][h][g];
          }
          worst = std::max(worst, Num<T>::magnitude(lhs - s.kappa * rhs));
        }
  return worst;
}

}  // namespace cayley
