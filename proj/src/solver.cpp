#include "cayley/solver.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

namespace cayley {

TorsionMask TorsionMask::parse(const std::string& s) {
  if (s == "all" || s == "full") return full();
  if (s == "none" || s.empty()) return none();
  TorsionMask m = none();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "biangle")
      m.biangle = true;
    else if (tok == "triangle")
      m.triangle = true;
    else if (tok == "quadrangle")
      m.quadrangle = true;
    else
      throw Error(errc::kUsage, "unknown torsion sector '" + tok + "'");
  }
  return m;
}

std::string TorsionMask::str() const {
  std::vector<std::string> parts;
  if (biangle) parts.emplace_back("biangle");
  if (triangle) parts.emplace_back("triangle");
  if (quadrangle) parts.emplace_back("quadrangle");
  if (parts.empty()) return "none";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
  return out;
}

Parameterization parameterize(const Lattice& lat, const TorsionMask& mask) {
  const int n = lat.n();
  Parameterization p;
  p.n = n;
  p.entries.assign(n, std::vector<AffineEntry>(n * n));
  p.last_param.assign(n, -1);
  auto fresh = [&](int a, int r, int c) {
    p.param_names.push_back("V" + lat.arrow_name(a) + "[" + std::to_string(r) + "," + std::to_string(c) + "]");
    return p.num_params++;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& pc = lat.product_class(a, b);
      auto& col = p.entries[a];
      if (!mask.covers(pc.sector)) {
        for (int r = 0; r < n; ++r) col[r * n + b] = AffineEntry{0, fresh(a, r, b), 1};
        continue;
      }
      if (pc.sector == Sector::Biangle) {
        for (int r = 0; r < n; ++r) col[r * n + b] = AffineEntry{r == a ? -1 : 0, -1, 1};
      } else if (pc.sector == Sector::Triangle) {
        for (int r = 0; r < n; ++r)
          col[r * n + b] = AffineEntry{Rational((r == pc.product) - (r == a)), -1, 1};
      } else {
        const auto& chain = lat.chains()[pc.chain];
        auto [fa, fb] = chain.pairs.front();
        if (fa == a && fb == b) {
          for (int r = 0; r < n; ++r) col[r * n + b] = AffineEntry{0, fresh(a, r, b), 1};
        } else {
          // V_a[:,b] = V_fa[:,fb] + e_fa - e_a; fa < a, so its slots exist already.
          for (int r = 0; r < n; ++r) {
            const auto& src = p.entries[fa][r * n + fb];
            col[r * n + b] = AffineEntry{src.constant + Rational((r == fa) - (r == a)), src.param, src.coeff};
          }
        }
      }
    }
  for (int a = 0; a < n; ++a)
    for (const auto& e : p.entries[a]) p.last_param[a] = std::max(p.last_param[a], e.param);
  return p;
}

std::vector<Rational> default_grid() {
  std::vector<Rational> out;
  for (int num = -8; num <= 8; ++num) out.emplace_back(num, 2);
  return out;
}

namespace {

// Compatibility constraints V^T L V = R, grouped per arrow.
struct Constraint {
  Matrix<Rational> L, R;
  Matrix<double> Ld, Rd;
};

using ConstraintSet = std::vector<std::vector<Constraint>>;

void add_constraint(std::vector<Constraint>& list, const Matrix<Rational>& L, const Matrix<Rational>& R) {
  for (const auto& c : list)
    if (c.L == L && c.R == R) return;
  list.push_back({L, R, L.cast<double>(), R.cast<double>()});
}

ConstraintSet constraints_for(const Lattice& lat, const MetricField<Rational>& m, const std::vector<Elem>& sites) {
  ConstraintSet cs(lat.n());
  for (int a = 0; a < lat.n(); ++a)
    for (Elem g : sites) add_constraint(cs[a], m[g], m[lat.step(g, a)]);
  return cs;
}

bool arrow_ok(const Matrix<Rational>& v, const std::vector<Constraint>& cons) {
  for (const auto& c : cons)
    if (!(v.transpose() * c.L * v == c.R)) return false;
  return true;
}

struct Candidate {
  bool exact = false;
  std::vector<Rational> xr;
  std::vector<double> x;
  double residual = 0;
};

std::vector<Candidate> grid_search(const Parameterization& p, const ConstraintSet& cs,
                                   const std::vector<Rational>& grid) {
  std::vector<Candidate> out;
  std::vector<std::vector<int>> done_at(std::max(p.num_params, 1));
  for (int a = 0; a < p.n; ++a) {
    if (p.last_param[a] < 0) {
      std::vector<Rational> none;
      if (!arrow_ok(p.arrow_matrix<Rational>(a, none), cs[a])) return out;
    } else {
      done_at[p.last_param[a]].push_back(a);
    }
  }
  std::vector<Rational> x(p.num_params);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == p.num_params) {
      Candidate c;
      c.exact = true;
      c.xr = x;
      for (const auto& v : x) c.x.push_back(v.to_double());
      out.push_back(std::move(c));
      return;
    }
    for (const auto& val : grid) {
      x[k] = val;
      bool ok = true;
      for (int a : done_at[k])
        if (!arrow_ok(p.arrow_matrix<Rational>(a, x), cs[a])) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Residual vector and Jacobian of the upper-triangular compatibility equations.
void evaluate(const Parameterization& p, const ConstraintSet& cs, const Eigen::VectorXd& x, Eigen::VectorXd& F,
              Eigen::MatrixXd& J) {
  const int n = p.n;
  std::vector<double> xv(x.data(), x.data() + x.size());
  int rows = 0;
  for (const auto& list : cs) rows += static_cast<int>(list.size()) * n * (n + 1) / 2;
  F.setZero(rows);
  J.setZero(rows, p.num_params);
  int row = 0;
  for (int a = 0; a < n; ++a) {
    Matrix<double> V = p.arrow_matrix<double>(a, xv);
    for (const auto& c : cs[a]) {
      Matrix<double> LV = c.Ld * V;
      Matrix<double> VtL = V.transpose() * c.Ld;
      Matrix<double> res = V.transpose() * LV - c.Rd;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++row) {
          F(row) = res(i, j);
          for (int idx = 0; idx < n * n; ++idx) {
            const auto& e = p.entries[a][idx];
            if (e.param < 0) continue;
            int r = idx / n, col = idx % n;
            double k = e.coeff.to_double();
            double d = 0;
            if (i == col) d += k * LV(r, j);
            if (j == col) d += k * VtL(i, r);
            J(row, e.param) += d;
          }
        }
    }
  }
}

std::optional<Candidate> levenberg_marquardt(const Parameterization& p, const ConstraintSet& cs,
                                             const SolveConfig& cfg, std::uint64_t stream) {
  std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ULL * stream);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Eigen::VectorXd x(p.num_params);
  for (int i = 0; i < p.num_params; ++i) x(i) = dist(rng);
  Eigen::VectorXd F, Fn;
  Eigen::MatrixXd J, Jn;
  evaluate(p, cs, x, F, J);
  double cost = F.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < cfg.newton_iterations && F.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * F;
    bool stepped = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd Ad = A;
      for (int i = 0; i < p.num_params; ++i) Ad(i, i) += lambda * (A(i, i) + 1e-9);
      Eigen::VectorXd delta = Ad.ldlt().solve(-g);
      Eigen::VectorXd xn = x + delta;
      evaluate(p, cs, xn, Fn, Jn);
      double cn = Fn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        F = Fn;
        J = Jn;
        cost = cn;
        lambda = std::max(lambda / 3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4;
    }
    if (!stepped) break;
  }
  double resid = F.size() ? F.lpNorm<Eigen::Infinity>() : 0.0;
  if (resid > cfg.tolerance) return std::nullopt;
  Candidate c;
  c.x.assign(x.data(), x.data() + x.size());
  c.residual = resid;
  // Rationalize and verify exactly.
  std::vector<Rational> xr;
  bool close = true;
  for (double v : c.x) {
    Rational r = Rational::approximate(v, cfg.max_denominator);
    close = close && std::fabs(r.to_double() - v) < 1e-7;
    xr.push_back(r);
  }
  if (close) {
    bool ok = true;
    for (int a = 0; a < p.n && ok; ++a) ok = arrow_ok(p.arrow_matrix<Rational>(a, xr), cs[a]);
    if (ok) {
      c.exact = true;
      c.xr = xr;
      c.x.clear();
      for (const auto& r : xr) c.x.push_back(r.to_double());
      c.residual = 0;
    }
  }
  return c;
}

std::vector<Candidate> newton_search(const Parameterization& p, const ConstraintSet& cs, const SolveConfig& cfg) {
  if (p.num_params == 0) {
    std::vector<Rational> none;
    for (int a = 0; a < p.n; ++a)
      if (!arrow_ok(p.arrow_matrix<Rational>(a, none), cs[a])) return {};
    Candidate c;
    c.exact = true;
    return {c};
  }
  const int restarts = std::max(cfg.newton_restarts, 1);
  std::vector<std::optional<Candidate>> slots(restarts);
  const int threads = std::clamp(cfg.threads, 1, restarts);
  auto work = [&](int t) {
    for (int r = t; r < restarts; r += threads) slots[r] = levenberg_marquardt(p, cs, cfg, r);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<Candidate> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

std::vector<Solution> finish(const Lattice& lat, const Parameterization& p, std::vector<Candidate> cands,
                             bool constant) {
  std::vector<Solution> out;
  auto duplicate = [&](const Candidate& c) {
    for (const auto& s : out) {
      if (c.exact && s.exact) {
        if (p.instantiate(c.xr) == s.exact_V) return true;
        continue;
      }
      double d = 0;
      for (std::size_t i = 0; i < c.x.size(); ++i) d = std::max(d, std::fabs(c.x[i] - s.params[i]));
      if (d < 1e-6) return true;
    }
    return false;
  };
  // Exact candidates first so float duplicates of them are dropped.
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.exact > b.exact;
  });
  for (auto& c : cands) {
    if (duplicate(c)) continue;
    Solution s;
    s.exact = c.exact;
    s.params = c.x;
    s.residual = c.residual;
    if (c.exact) {
      s.exact_V = p.instantiate(c.xr);
      for (const auto& v : s.exact_V) s.V.push_back(v.cast<double>());
    } else {
      s.V = p.instantiate(c.x);
    }
    for (const auto& v : s.V) {
      int sign = c.exact ? determinant(s.exact_V[&v - s.V.data()]).sign() : Num<double>::sign(determinant(v));
      s.det_sign.push_back(sign);
    }
    if (constant) {
      if (s.exact)
        s.flat = curvature(lat, Connection<Rational>::constant(lat.order(), s.exact_V)).is_zero();
      else
        s.flat = curvature(lat, Connection<double>::constant(lat.order(), s.V)).is_zero();
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
    if (a.exact != b.exact) return a.exact > b.exact;
    return a.params < b.params;
  });
  return out;
}

std::vector<Solution> run(const Lattice& lat, const Parameterization& p, const ConstraintSet& cs,
                          const SolveConfig& cfg, bool constant) {
  auto cands = cfg.grid ? grid_search(p, cs, *cfg.grid) : newton_search(p, cs, cfg);
  return finish(lat, p, std::move(cands), constant);
}

void check_metric(const Lattice& lat, const MetricField<Rational>& m) {
  auto sig = validate_metric(lat, m);
  if (!sig.constant) throw Error(errc::kSignature, "metric signature is not constant over the group");
}

}  // namespace

SolveReport solve(const Lattice& lat, const MetricField<Rational>& m, const TorsionMask& mask,
                  const SolveConfig& cfg) {
  check_metric(lat, m);
  SolveReport rep;
  rep.param = parameterize(lat, mask);
  rep.mask = mask;
  rep.constant_connection = cfg.constant_connection;
  if (cfg.constant_connection) {
    std::vector<Elem> sites(lat.order());
    std::iota(sites.begin(), sites.end(), 0);
    rep.solutions = run(lat, rep.param, constraints_for(lat, m, sites), cfg, true);
  } else {
    for (Elem g = 0; g < lat.order(); ++g) rep.per_site.push_back(solve_at_site(lat, m, mask, g, cfg));
  }
  return rep;
}

std::vector<Solution> solve_at_site(const Lattice& lat, const MetricField<Rational>& m, const TorsionMask& mask,
                                    Elem site, const SolveConfig& cfg) {
  if (m.order() != lat.order()) throw Error(errc::kSchema, "metric is not defined on every site");
  auto p = parameterize(lat, mask);
  return run(lat, p, constraints_for(lat, m, {site}), cfg, false);
}

Connection<Rational> constant_connection(const Lattice& lat, const Solution& s) {
  if (!s.exact) throw Error(errc::kUnsupported, "solution has no exact form");
  return Connection<Rational>::constant(lat.order(), s.exact_V);
}

Connection<Rational> assemble(const Lattice& lat, const SolveReport& report, const std::vector<int>& choice) {
  if (report.per_site.size() != static_cast<std::size_t>(lat.order()) ||
      choice.size() != static_cast<std::size_t>(lat.order()))
    throw Error(errc::kUsage, "need one solution choice per site");
  Connection<Rational> c;
  c.V.assign(lat.n(), MatrixField<Rational>(lat.order()));
  for (Elem g = 0; g < lat.order(); ++g) {
    const auto& list = report.per_site[g];
    if (choice[g] < 0 || choice[g] >= static_cast<int>(list.size()))
      throw Error(errc::kUsage, "no solution " + std::to_string(choice[g]) + " at site " + lat.group().name(g));
    const auto& s = list[choice[g]];
    if (!s.exact) throw Error(errc::kUnsupported, "solution has no exact form");
    for (int a = 0; a < lat.n(); ++a) c.at(a, g) = s.exact_V[a];
  }
  return c;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix<Rational>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Rational d = m(row, col);
    for (int c = 0; c < m.cols(); ++c) m(row, c) /= d;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (int c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  auto pivots = rref(m);
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(static_cast<int>(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  return static_cast<int>(rref(m).size());
}

std::vector<Matrix<Rational>> compatible_constant_metrics(const Lattice& lat, const Connection<Rational>& c) {
  if (!c.is_constant()) throw Error(errc::kUnsupported, "connection is not constant");
  const int n = lat.n();
  std::vector<Matrix<Rational>> sym;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix<Rational> e(n, n);
      e(i, j) = 1;
      e(j, i) = 1;
      sym.push_back(e);
    }
  const int eqs_per = n * (n + 1) / 2;
  Matrix<Rational> A(n * eqs_per, static_cast<int>(sym.size()));
  for (int a = 0; a < n; ++a) {
    const auto& v = c.at(a, 0);
    for (std::size_t k = 0; k < sym.size(); ++k) {
      Matrix<Rational> d = v.transpose() * sym[k] * v - sym[k];
      int row = a * eqs_per;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++row) A(row, static_cast<int>(k)) = d(i, j);
    }
  }
  std::vector<Matrix<Rational>> out;
  for (const auto& v : nullspace(A)) {
    Matrix<Rational> g(n, n);
    for (std::size_t k = 0; k < sym.size(); ++k)
      if (!v[k].is_zero()) g += sym[k] * v[k];
    out.push_back(g);
  }
  return out;
}

namespace {

Rational checked_div(const Rational& a, const Rational& b, const char* what) {
  if (b.is_zero()) throw Error(errc::kDegenerate, std::string("zero denominator in ") + what);
  return a / b;
}

}  // namespace

std::pair<Rational, Rational> z4_shift1(const Rational& p, const Rational& q) {
  Rational d = 1 + p + q;
  return {checked_div(-p, d, "R1* p"), checked_div(-(2 + p + q), d, "R1* q")};
}

std::pair<Rational, Rational> z4_shift2(const Rational& p, const Rational& q) {
  Rational d = 1 + p;
  return {checked_div(-p, d, "R2* p"), checked_div(q, d, "R2* q")};
}

FlatFamily flat_family_z4(const Rational& p, const Rational& q, const Rational& a, const Rational& b,
                          const Rational& c) {
  FlatFamily f;
  f.p = {p, checked_div(-p, 1 + p + q, "p(1)"), checked_div(-p, 1 + p, "p(2)"), checked_div(p, 1 + q, "p(3)")};
  f.q = {q, checked_div(-(2 + p + q), 1 + p + q, "q(1)"), checked_div(q, 1 + p, "q(2)"),
         checked_div(-(2 + p + q), 1 + q, "q(3)")};
  Rational a1 = a - 2 * b + c;
  Rational b1 = -p * a + (p - 1 - q) * b + (1 + q) * c;
  Rational c1 = p * p * a + 2 * p * (1 + q) * b + (1 + q) * (1 + q) * c;
  Rational a2 = (1 + p) * (1 + p) * a + 2 * q * (1 + p) * b + q * q * c;
  Rational b2 = -(1 + p) * b - q * c;
  Rational a3 = (1 + p) * (1 + p) * a + 2 * (1 + p) * (1 + q) * b + (1 + q) * (1 + q) * c;
  Rational b3 = p * (1 + p) * a + (1 + 2 * p) * (1 + q) * b + (1 + q) * (1 + q) * c;
  f.metric.g = {Matrix<Rational>{{a, b}, {b, c}}, Matrix<Rational>{{a1, b1}, {b1, c1}},
                Matrix<Rational>{{a2, b2}, {b2, c}}, Matrix<Rational>{{a3, b3}, {b3, c1}}};
  for (int k = 0; k < 4; ++k)
    if (determinant(f.metric[k]).is_zero())
      throw Error(errc::kDegenerate, "metric degenerates at site " + std::to_string(k));
  f.connection.V.assign(2, MatrixField<Rational>(4));
  for (int k = 0; k < 4; ++k) {
    f.connection.at(0, k) = Matrix<Rational>{{-1, f.p[k]}, {1, 1 + f.q[k]}};
    f.connection.at(1, k) = Matrix<Rational>{{1 + f.p[k], 0}, {f.q[k], -1}};
  }
  Lattice lat(Group::cyclic(4), {1, 2});
  if (!is_compatible(lat, f.metric, f.connection))
    throw Error(errc::kInconsistent, "flat family metric is not compatible with its connection");
  return f;
}

ReflectionReport reflection_freedom(const Lattice& lat, const MetricField<Rational>& m,
                                    const Connection<Rational>& c1, const Connection<Rational>& c2, Elem site) {
  if (!lat.hypercubic()) throw Error(errc::kUnsupported, "reflection analysis needs a hypercubic lattice");
  auto sig = validate_metric(lat, m);
  if (sig.at(site).second != 0) throw Error(errc::kSignature, "reflection analysis needs a positive-definite metric");
  for (const auto* c : {&c1, &c2}) {
    check_shapes(lat, *c);
    if (!is_compatible(lat, m, *c)) throw Error(errc::kNotCompatible, "connection is not metric-compatible");
    if (!torsion(lat, *c).is_zero()) throw Error(errc::kNotCompatible, "connection has torsion");
  }
  const int n = lat.n();
  Matrix<double> U = factor_metric(m[site].cast<double>()).E;  // columns: n-bein vectors u_h
  auto dev = [&](const Connection<Rational>& c, int i, int j) { return U * c.at(i, site).cast<double>().column(j); };
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };
  ReflectionReport rep;
  rep.site = site;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ReflectionPair pr;
      pr.i = i;
      pr.j = j;
      std::vector<double> vij = dev(c1, i, j);
      pr.A_ij = dev(c2, i, j) - vij;
      pr.A_ji = dev(c2, j, i) - dev(c1, j, i);
      pr.symmetric = std::sqrt(norm2(pr.A_ij - pr.A_ji)) < kFloatTol;
      pr.orthogonal = std::fabs(dot(pr.A_ij, U.column(j) - U.column(i))) < kFloatTol;
      double len = std::sqrt(norm2(pr.A_ij));
      if (len < kFloatTol) {
        pr.reflection = true;
      } else {
        pr.normal = scaled(pr.A_ij, 1.0 / len);
        auto refl = scaled(pr.normal, -2.0 * dot(pr.normal, vij));
        pr.reflection = std::sqrt(norm2(refl - pr.A_ij)) < 1e-8;
      }
      rep.pairs.push_back(std::move(pr));
    }
  return rep;
}

}  // namespace cayley
