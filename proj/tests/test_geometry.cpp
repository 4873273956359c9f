#include <gtest/gtest.h>

#include "support.hpp"

using namespace cayley;
using namespace cayley::testing;

namespace {

std::vector<Rational> vec(std::initializer_list<std::int64_t> v) {
  std::vector<Rational> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Z3Spherical, Torsion) {
  Lattice lat = z3();
  auto tc = torsion(lat, z3_spherical());
  for (Elem g = 0; g < 3; ++g) {
    EXPECT_EQ(tc.at(0, 0, g), vec({1, 0}));
    EXPECT_EQ(tc.at(1, 1, g), vec({0, 1}));
    EXPECT_EQ(tc.at(0, 1, g), vec({0, 0}));
    EXPECT_EQ(tc.at(1, 0, g), vec({0, 0}));
  }
}

TEST(Z3Spherical, CurvatureRicciScalar) {
  Lattice lat = z3();
  auto m = constant_metric(lat, RM::identity(2));
  auto cc = curvature(lat, z3_spherical());
  auto ric = ricci(lat, cc);
  auto R0 = curvature_scalar(lat, m, ric.ric);
  for (Elem g = 0; g < 3; ++g) {
    EXPECT_EQ(cc.at(0, 0, g), (RM{{R(-1), R(-1)}, {R(1), R(-1)}}));
    EXPECT_EQ(cc.at(1, 1, g), (RM{{R(-1), R(1)}, {R(-1), R(-1)}}));
    EXPECT_TRUE(cc.at(0, 1, g).is_zero());
    EXPECT_TRUE(cc.at(1, 0, g).is_zero());
    EXPECT_EQ(ric.ric[g], (RM{{R(-1), R(-1)}, {R(-1), R(-1)}}));
    EXPECT_EQ(R0[g], R(-2));
  }
}

TEST(Z3Spherical, TensorOnFieldsMatchesComponents) {
  Lattice lat = z3();
  auto c = z3_spherical();
  auto tc = torsion(lat, c);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      BasicVectorField X(3, x), Y(3, y);
      auto q = torsion_on_fields(lat, c, X, Y);
      for (Elem g = 0; g < 3; ++g) EXPECT_EQ(q[g], tc.at(x, y, g)) << x << y;
    }
}

TEST(Z3LeviCivita, UniqueAndFlat) {
  Lattice lat = z3();
  auto p = parameterize(lat, TorsionMask::full());
  EXPECT_EQ(p.num_params, 0);
  auto V = p.instantiate<Rational>({});
  EXPECT_EQ(V[0], (RM{{R(-1), R(-1)}, {R(1), R(0)}}));
  EXPECT_EQ(V[1], (RM{{R(0), R(1)}, {R(-1), R(-1)}}));
  auto c = constant_conn(lat, V);
  EXPECT_TRUE(torsion(lat, c).is_zero());
  EXPECT_TRUE(curvature(lat, c).is_zero());

  auto basis = compatible_constant_metrics(lat, c);
  ASSERT_EQ(basis.size(), 1u);
  RM b = basis[0] * (R(1) / basis[0](0, 0));
  EXPECT_EQ(b, tetra_metric());
}

TEST(Z3LeviCivita, MetricPropagation) {
  Lattice lat = z3();
  auto V = parameterize(lat, TorsionMask::full()).instantiate<Rational>({});
  Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    Rational a = gen.rational(), b = gen.rational(), c = gen.rational();
    RM g{{a, b}, {b, c}};
    RM next = V[0].transpose() * g * V[0];
    EXPECT_EQ(next, (RM{{a - 2 * b + c, a - b}, {a - b, a}}));
  }
  // A site-dependent metric built by propagation is compatible whenever it is nonsingular.
  RM g0{{R(3), R(1)}, {R(1), R(2)}};
  MetricField<Rational> m;
  m.g = {g0, V[0].transpose() * g0 * V[0], V[0].transpose() * V[0].transpose() * g0 * V[0] * V[0]};
  EXPECT_TRUE(is_compatible(lat, m, constant_conn(lat, V)));
}

TEST(Z4Tetrahedron, UniqueConnectionAndMetricFamily) {
  Lattice lat = z4_123();
  auto p = parameterize(lat, TorsionMask::full());
  EXPECT_EQ(p.num_params, 0);
  auto V = p.instantiate<Rational>({});
  EXPECT_EQ(V[0], (RM{{R(-1), R(-1), R(-1)}, {R(1), R(0), R(0)}, {R(0), R(1), R(0)}}));
  EXPECT_EQ(V[1], (RM{{R(0), R(0), R(1)}, {R(-1), R(-1), R(-1)}, {R(1), R(0), R(0)}}));
  EXPECT_EQ(V[2], (RM{{R(0), R(1), R(0)}, {R(0), R(0), R(1)}, {R(-1), R(-1), R(-1)}}));
  auto c = constant_conn(lat, V);

  auto basis = compatible_constant_metrics(lat, c);
  EXPECT_EQ(basis.size(), 2u);
  auto family = [](const Rational& a, const Rational& b) {
    return RM{{a, b, a - b}, {b, 2 * b, b}, {a - b, b, a}};
  };
  // The family spans the compatible metrics: every basis element is a member.
  for (const auto& m : basis) EXPECT_EQ(m, family(m(0, 0), m(0, 1)));

  Gen gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    Rational a = gen.nonzero_rational(), b = gen.nonzero_rational();
    if (a == b || a == 3 * b || a.sign() == 0) continue;
    auto m = constant_metric(lat, family(a, b));
    EXPECT_TRUE(is_compatible(lat, m, c));
  }
  try {
    validate_metric(lat, constant_metric(lat, family(R(2), R(2))));
    FAIL() << "b = a must be singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::kSingular);
  }
}

TEST(Natural, S3PermutationConnection) {
  Lattice lat = s3();
  RM seed{{R(7), R(2), R(3)}, {R(2), R(11), R(5)}, {R(3), R(5), R(13)}};
  auto m = right_invariant_extension(lat, seed);
  auto c = natural_connection(lat, m);
  EXPECT_TRUE(is_compatible(lat, m, c));
  RM P12{{R(1), R(0), R(0)}, {R(0), R(0), R(1)}, {R(0), R(1), R(0)}};
  EXPECT_EQ(c.at(0, 0), P12);
}

TEST(Natural, RejectsNonRightInvariantMetric) {
  Lattice lat = s3();
  MetricField<Rational> m = constant_metric(lat, RM{{R(7), R(2), R(3)}, {R(2), R(11), R(5)}, {R(3), R(5), R(13)}});
  EXPECT_THROW(natural_connection(lat, m), Error);
}

TEST(Isometries, ReconstructCurvature) {
  Gen gen(99);
  for (const Lattice& lat : {z3(), z4_12(), z4_13(), s3()}) {
    auto p = gen.compatible(lat);
    auto entries = integrability_isometries(lat, p.metric, p.connection);
    EXPECT_FALSE(entries.empty());
    for (const auto& e : entries) {
      EXPECT_TRUE(e.isometry);
      EXPECT_TRUE(e.reconstructs);
    }
  }
}

TEST(Isometries, RequireCompatibility) {
  Lattice lat = z3();
  auto stretch = constant_conn(lat, {RM{{R(2), R(0)}, {R(0), R(1)}}, RM::identity(2)});
  EXPECT_THROW(integrability_isometries(lat, constant_metric(lat, RM::identity(2)), stretch), Error);
}

TEST(Compatibility, ResidualAndContravariantForm) {
  Gen gen(5);
  Lattice lat = z4_12();
  auto p = gen.compatible(lat, 1);
  EXPECT_TRUE(is_compatible(lat, p.metric, p.connection));
  for (const auto& site : contravariant_residual(lat, p.metric, p.connection))
    for (const auto& r : site) EXPECT_TRUE(r.is_zero());
}

TEST(Gauge, RejectsNonIsometry) {
  Lattice lat = z3();
  auto m = constant_metric(lat, RM::identity(2));
  std::vector<MatrixField<Rational>> J(2, MatrixField<Rational>(3, RM{{R(2), R(0)}, {R(0), R(1)}}));
  try {
    apply_gauge(lat, m, z3_spherical(), J);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::kNotIsometry);
  }
}

TEST(Density, HypercubicFrameRouteMatchesScalar) {
  Gen gen(41);
  Lattice lat = torus({3, 3});
  for (int trial = 0; trial < 10; ++trial) {
    auto p = gen.compatible(lat);
    auto d = einstein_hilbert_density(lat, p.metric, p.connection);
    for (Elem g = 0; g < lat.order(); ++g) EXPECT_NEAR(d.frame[g], d.scalar[g], 1e-9);
  }
}

TEST(Density, Z3SphericalRoutesDisagree) {
  // The frame route reads the (1,2) cap component, which is a biangle on Z3 and vanishes
  // for the spherical transport; the curvature sits in the triangles.
  Lattice lat = z3();
  auto d = einstein_hilbert_density(lat, constant_metric(lat, RM::identity(2)), z3_spherical());
  for (Elem g = 0; g < 3; ++g) {
    EXPECT_NEAR(d.frame[g], 0.0, 1e-12);
    EXPECT_NEAR(d.scalar[g], -2.0, 1e-12);
  }
}

TEST(Inequality, DetectsMissingLeviCivita) {
  Lattice lat = torus({3, 3});
  auto ok = lc_existence_inequality(lat, constant_metric(lat, RM::identity(2)));
  EXPECT_TRUE(ok.ok);
  // Long 1-arrows next to short ones: |V12| - |V21| exceeds |u2 - u1|.
  MetricField<Rational> m;
  for (Elem g = 0; g < lat.order(); ++g) {
    int a = lat.group().coords(g)[0];
    m.g.push_back(RM{{R(1), R(0)}, {R(0), R(a == 1 ? 100 : 1)}});
  }
  auto bad = lc_existence_inequality(lat, m);
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.failing_sites.empty());
}
