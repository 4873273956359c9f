#include <gtest/gtest.h>

#include "support.hpp"

using namespace cayley;
using namespace cayley::testing;

TEST(Calculus, EllDerivativeOfIndicator) {
  Lattice lat = z4_12();
  auto e0 = ScalarField<Rational>::indicator(4, 0);
  auto d = ell_derivative(lat, 0, e0);
  EXPECT_EQ(d, ScalarField<Rational>(std::vector<Rational>{R(-1), R(0), R(0), R(1)}));
}

TEST(Calculus, AbelianPullbackKeepsBasis) {
  Lattice lat = z4_12();
  auto t1 = OneForm<Rational>::basis(lat, 0);
  EXPECT_EQ(pullback(lat, 0, t1), t1);
  EXPECT_EQ(pullback(lat, 1, t1), t1);
}

TEST(Calculus, S3PullbackRelabelsBasis) {
  Lattice lat = s3();
  // R*_(12) theta^(13) = theta^(23)
  auto w = pullback(lat, 0, OneForm<Rational>::basis(lat, 1));
  EXPECT_EQ(w, OneForm<Rational>::basis(lat, 2));
}

TEST(Calculus, Z3CapProductSector) {
  Lattice lat = z3();
  EXPECT_EQ(lat.cap_class(0, 1).sector, Sector::Biangle);
  EXPECT_EQ(lat.cap_class(0, 0).sector, Sector::Triangle);
}

TEST(Calculus, DeltaOnZ3) {
  Lattice lat = z3();
  // Delta(theta^2) = theta^1 cap theta^1
  auto d = delta_map(lat, OneForm<Rational>::basis(lat, 1));
  TwoFormCanonical<Rational> expect(lat);
  expect.at(0, 0) = ScalarField<Rational>(3, R(1));
  EXPECT_EQ(d, expect);
}

TEST(Calculus, DifferentialSquaresToZero) {
  Gen gen(7);
  for (const Lattice& lat : {z3(), z4_12(), z4_13(), s3(), torus({3, 4})}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto f = gen.field(lat.order());
      EXPECT_TRUE(differential_on_1form(lat, differential(lat, f)).is_zero());
    }
  }
}

TEST(Calculus, BasisCommutationRule) {
  // theta^h f = (R*_h f) theta^h  <=>  d(f g) = (df) g + f dg with the twisted product
  Gen gen(11);
  Lattice lat = s3();
  for (int trial = 0; trial < 5; ++trial) {
    auto f = gen.field(lat.order());
    auto g = gen.field(lat.order());
    auto dfg = differential(lat, f * g);
    auto df = differential(lat, f);
    auto dg = differential(lat, g);
    for (int h = 0; h < lat.n(); ++h)
      EXPECT_EQ(dfg.coef[h], df.coef[h] * pullback(lat, h, g) + f * dg.coef[h]);
  }
}

TEST(Calculus, TensorBasisConversionRoundTrip) {
  Gen gen(5);
  Lattice lat = s3();
  LTensor<Rational> t(lat, 2);
  for (auto& c : t.coef) c = gen.field(lat.order());
  auto a = convert_tensor_basis(lat, t, TensorBasis::A);
  EXPECT_EQ(a.basis, TensorBasis::A);
  EXPECT_EQ(convert_tensor_basis(lat, a, TensorBasis::L), t);
}

TEST(Metric, RightInvariantExtensionOnCyclicIsConstant) {
  Lattice lat = z4_12();
  auto m = right_invariant_extension(lat, tetra_metric());
  for (Elem g = 0; g < 4; ++g) EXPECT_EQ(m[g], tetra_metric());
}

TEST(Metric, S3KillingTable) {
  Lattice lat = s3();
  const Rational a = 7, b = 2, c = 3, d = 11, e = 5, f = 13;
  RM seed{{a, b, c}, {b, d, e}, {c, e, f}};
  auto m = right_invariant_extension(lat, seed);
  const auto& G = lat.group();
  auto at = [&](const char* cyc) { return m[*G.parse_cycles(cyc)]; };
  EXPECT_EQ(at("(12)"), (RM{{a, c, b}, {c, f, e}, {b, e, d}}));
  EXPECT_EQ(at("(13)"), (RM{{f, e, c}, {e, d, b}, {c, b, a}}));
  EXPECT_EQ(at("(23)"), (RM{{d, b, e}, {b, a, c}, {e, c, f}}));
  EXPECT_EQ(at("(123)"), (RM{{d, e, b}, {e, f, c}, {b, c, a}}));
  EXPECT_EQ(at("(132)"), (RM{{f, c, e}, {c, a, b}, {e, b, d}}));
  EXPECT_EQ(m[G.identity()], seed);
  for (int h = 0; h < 3; ++h) EXPECT_TRUE(killing_check(lat, m, h).ok);
  auto ic = invariance_class(lat, m);
  EXPECT_TRUE(ic.right);
  EXPECT_FALSE(ic.left);
  EXPECT_FALSE(ic.bi);
}

TEST(Metric, S3BiInvariantSubfamily) {
  Lattice lat = s3();
  RM seed{{R(3), R(1), R(1)}, {R(1), R(3), R(1)}, {R(1), R(1), R(3)}};
  auto m = right_invariant_extension(lat, seed);
  auto ic = invariance_class(lat, m);
  EXPECT_TRUE(ic.bi);
  EXPECT_TRUE(ic.ad_invariant);
}

TEST(Metric, ValidationErrors) {
  Lattice lat = z3();
  auto code_of = [&](const RM& g) {
    try {
      validate_metric(lat, constant_metric(lat, g));
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of(RM{{R(1), R(2)}, {R(0), R(1)}}), errc::kAsymmetric);
  EXPECT_EQ(code_of(RM{{R(1), R(1)}, {R(1), R(1)}}), errc::kSingular);
  EXPECT_EQ(code_of(tetra_metric()), "none");
}

TEST(Metric, SignatureAndInertia) {
  auto [p, q, z] = inertia(RM{{R(1), R(2)}, {R(2), R(1)}});
  EXPECT_EQ(p, 1);
  EXPECT_EQ(q, 1);
  EXPECT_EQ(z, 0);
  auto [p2, q2, z2] = inertia(RM{{R(0), R(1), R(0)}, {R(1), R(0), R(0)}, {R(0), R(0), R(0)}});
  EXPECT_EQ(p2, 1);
  EXPECT_EQ(q2, 1);
  EXPECT_EQ(z2, 1);
}

TEST(Metric, CoframeFactorizations) {
  Gen gen(21);
  for (int negatives : {0, 1}) {
    for (int trial = 0; trial < 20; ++trial) {
      RM a = gen.invertible(3);
      RM g = a.transpose() * Gen::eta(3, negatives) * a;
      auto f = factor_metric(g.cast<double>());
      EXPECT_TRUE((f.E.transpose() * f.eta * f.E).approx_equal(g.cast<double>()));
      int neg = 0;
      for (int i = 0; i < 3; ++i) neg += f.eta(i, i) < 0;
      EXPECT_EQ(neg, negatives);
      if (negatives == 0)
        for (int i = 0; i < 3; ++i) {
          EXPECT_GT(f.E(i, i), 0);
          for (int j = 0; j < i; ++j) EXPECT_EQ(f.E(i, j), 0);
        }
    }
  }
}
