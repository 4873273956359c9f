#include "cayley/coordinates.hpp"

namespace cayley {

namespace {

ScalarField<Rational> field(std::initializer_list<long long> v) {
  ScalarField<Rational> f;
  for (long long x : v) f.v.emplace_back(x);
  return f;
}

ScalarField<Rational> constant(int order, long long c) { return ScalarField<Rational>(order, Rational(c)); }

// Two 1-forms given by their theta-basis coefficient fields.
bool same_form(const std::vector<ScalarField<Rational>>& a, const std::vector<ScalarField<Rational>>& b) {
  return a == b;
}

}  // namespace

Z4Coordinates z4_coordinates() {
  Z4Coordinates s{Lattice(Group::cyclic(4), {1, 2}), field({1, -1, 1, -1}), field({1, 1, -1, -1}), {}};
  for (Elem g = 0; g < 4; ++g) {
    Matrix<Rational> j(2, 2);
    for (int h = 0; h < 2; ++h) {
      j(0, h) = ell_derivative(s.lat, h, s.x)[g];
      j(1, h) = ell_derivative(s.lat, h, s.y)[g];
    }
    s.jacobian.push_back(j);
  }
  return s;
}

std::vector<CheckItem> z4_coordinate_checks(const Z4Coordinates& s) {
  const auto& lat = s.lat;
  const auto one = constant(4, 1);
  const auto& x = s.x;
  const auto& y = s.y;
  std::vector<CheckItem> out;
  out.push_back({"coordinates", coordinates_valid(lat, std::vector<ScalarField<Rational>>{x, y})});
  bool formula = true, invertible = true;
  for (Elem g = 0; g < 4; ++g) {
    Matrix<Rational> expect{{-2 * x[g], 0}, {(x[g] - 1) * y[g], -2 * y[g]}};
    formula = formula && s.jacobian[g] == expect;
    invertible = invertible && !determinant(s.jacobian[g]).is_zero();
  }
  out.push_back({"jacobian_formula", formula});
  out.push_back({"jacobian_invertible", invertible});
  out.push_back({"x_squared", x * x == one});
  out.push_back({"y_squared", y * y == one});
  out.push_back({"R1x", pullback(lat, 0, x) == Rational(-1) * x});
  out.push_back({"R2x", pullback(lat, 1, x) == x});
  out.push_back({"R1y", pullback(lat, 0, y) == x * y});
  out.push_back({"R2y", pullback(lat, 1, y) == Rational(-1) * y});
  auto dx = differential(lat, x);
  auto dy = differential(lat, y);
  out.push_back({"dx", same_form(dx.coef, {Rational(-2) * x, ScalarField<Rational>(4)})});
  out.push_back({"dy", same_form(dy.coef, {(x - one) * y, Rational(-2) * y})});
  return out;
}

ScalarField<Rational> z4_compose(const Z4Coordinates& s, const ScalarField<Rational>& f,
                                 const ScalarField<Rational>& X, const ScalarField<Rational>& Y) {
  ScalarField<Rational> out(4);
  for (Elem g = 0; g < 4; ++g) {
    Elem hit = -1;
    for (Elem k = 0; k < 4; ++k)
      if (s.x[k] == X[g] && s.y[k] == Y[g]) hit = k;
    if (hit < 0) throw Error(errc::kDegenerate, "point outside the coordinate image");
    out[g] = f[hit];
  }
  return out;
}

ScalarField<Rational> z4_substitute_xxy(const Z4Coordinates& s, const ScalarField<Rational>& f) {
  const auto one = constant(4, 1);
  auto f_minus_y = z4_compose(s, f, s.x, Rational(-1) * s.y);
  return Rational(1, 2) * ((s.x + one) * f - (s.x - one) * f_minus_y);
}

Z4Partials z4_partial_derivatives(const Z4Coordinates& s, const ScalarField<Rational>& f) {
  ScalarField<Rational> f_x_xy = z4_substitute_xxy(s, f);
  ScalarField<Rational> f_mx_xy = z4_compose(s, f, Rational(-1) * s.x, s.x * s.y);
  ScalarField<Rational> f_x_my = z4_compose(s, f, s.x, Rational(-1) * s.y);
  Z4Partials p{ScalarField<Rational>(4), ScalarField<Rational>(4)};
  for (Elem g = 0; g < 4; ++g) {
    p.dx[g] = (f_x_xy[g] - f_mx_xy[g]) / (2 * s.x[g]);
    p.dy[g] = (f[g] - f_x_my[g]) / (2 * s.y[g]);
  }
  return p;
}

std::vector<CheckItem> z4_commutation_check(const Z4Coordinates& s) {
  const auto& lat = s.lat;
  const auto one = constant(4, 1);
  auto dx = differential(lat, s.x);
  auto dy = differential(lat, s.y);
  // [df, u] = sum_h (ell_h f)(ell_h u) theta^h
  auto bracket = [&](const OneForm<Rational>& df, const ScalarField<Rational>& u) {
    std::vector<ScalarField<Rational>> c;
    for (int h = 0; h < lat.n(); ++h) c.push_back(df.coef[h] * ell_derivative(lat, h, u));
    return c;
  };
  auto times = [&](const ScalarField<Rational>& f, const OneForm<Rational>& w) {
    std::vector<ScalarField<Rational>> c;
    for (int h = 0; h < lat.n(); ++h) c.push_back(f * w.coef[h]);
    return c;
  };
  const auto xm1y = (s.x - one) * s.y;
  return {
      {"[dx,x] = -2x dx", same_form(bracket(dx, s.x), times(Rational(-2) * s.x, dx))},
      {"[dy,y] = -2y dy", same_form(bracket(dy, s.y), times(Rational(-2) * s.y, dy))},
      {"[dx,y] = (x-1)y dx", same_form(bracket(dx, s.y), times(xm1y, dx))},
      {"[dy,x] = (x-1)y dx", same_form(bracket(dy, s.x), times(xm1y, dx))},
  };
}

}  // namespace cayley
