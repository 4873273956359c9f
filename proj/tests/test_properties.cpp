#include <gtest/gtest.h>

#include "support.hpp"

using namespace cayley;
using namespace cayley::testing;

namespace {

constexpr int kCases = 200;

std::vector<Lattice> lattices() { return {z3(), z4_12(), z4_13(), s3(), torus({3, 4})}; }

// Lattices that have at least one quadrangle chain.
std::vector<Lattice> quadrangle_lattices() { return {z4_12(), z4_13(), s3(), torus({3, 3})}; }

LTensor<Rational> random_tensor(Gen& gen, const Lattice& lat, int rank) {
  LTensor<Rational> t(lat, rank);
  for (auto& c : t.coef) c = gen.field(lat.order());
  return t;
}

TwoFormRaw<Rational> random_two_form(Gen& gen, const Lattice& lat) {
  TwoFormRaw<Rational> w(lat);
  for (auto& c : w.coef) c = gen.field(lat.order());
  return w;
}

// Isometry gauge at every (arrow, site): A^-1 O A with g = A^T eta A.
std::vector<MatrixField<Rational>> random_gauge(Gen& gen, const Lattice& lat, const Gen::CompatiblePair& p) {
  std::vector<MatrixField<Rational>> J(lat.n(), MatrixField<Rational>(lat.order()));
  for (int a = 0; a < lat.n(); ++a)
    for (Elem g = 0; g < lat.order(); ++g) J[a][g] = *inverse(p.frame[g]) * gen.orthogonal(p.eta) * p.frame[g];
  return J;
}

Elem endpoint(const Lattice& lat, Elem base, const std::vector<int>& path) {
  for (int a : path) base = lat.step(base, a);
  return base;
}

}  // namespace

TEST(Property, TensorProductIsAssociative) {
  Gen gen(101);
  auto lats = lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto a = random_tensor(gen, lat, 1);
    auto b = random_tensor(gen, lat, gen.integer(1, 2));
    auto c = random_tensor(gen, lat, 1);
    ASSERT_EQ(tensor_l(lat, tensor_l(lat, a, b), c), tensor_l(lat, a, tensor_l(lat, b, c))) << i;
  }
}

TEST(Property, PullbackDistributesOverTensorProduct) {
  Gen gen(102);
  auto lats = lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto a = random_tensor(gen, lat, gen.integer(1, 2));
    auto b = random_tensor(gen, lat, 1);
    int h = gen.integer(0, lat.n() - 1);
    ASSERT_EQ(pullback(lat, h, tensor_l(lat, a, b)), tensor_l(lat, pullback(lat, h, a), pullback(lat, h, b))) << i;
  }
}

TEST(Property, RelationsVanishAfterGaugeFixing) {
  Gen gen(103);
  auto lats = quadrangle_lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    ASSERT_FALSE(lat.chains().empty());
    auto w = random_two_form(gen, lat);
    int chain = gen.integer(0, static_cast<int>(lat.chains().size()) - 1);
    auto shifted = add_relation(lat, w, chain, gen.field(lat.order()));
    ASSERT_EQ(gauge_fix(lat, shifted), gauge_fix(lat, w)) << i;
  }
}

TEST(Property, CanonicalQuadrangleComponentsAreGaugeInvariant) {
  Gen gen(104);
  auto lats = quadrangle_lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    const int n = lat.n();
    auto c = gen.connection(lat);
    auto tc = torsion(lat, c);
    auto cc = curvature(lat, c);
    const int ci = gen.integer(0, static_cast<int>(lat.chains().size()) - 1);
    const auto& chain = lat.chains()[ci];

    // Torsion, one vector component at a time, with a random relation added.
    for (int h = 0; h < n; ++h) {
      TwoFormRaw<Rational> raw(lat);
      for (auto [a, b] : chain.pairs) {
        auto [x, y] = lat.product_to_cap(a, b);
        for (Elem g = 0; g < lat.order(); ++g) raw.at(x, y)[g] = torsion_term(lat, c, a, b, g)[h];
      }
      auto fixed = gauge_fix(lat, add_relation(lat, raw, ci, gen.field(lat.order())));
      for (auto [a, b] : chain.pairs) {
        auto [x, y] = lat.product_to_cap(a, b);
        for (Elem g = 0; g < lat.order(); ++g) ASSERT_EQ(fixed.at(x, y)[g], tc.at(x, y, g)[h]) << i;
      }
    }

    // Curvature: a common matrix added to every two-step transport of the chain.
    for (Elem g = 0; g < lat.order(); ++g) {
      RM psi = gen.matrix(n);
      RM total(n, n);
      for (auto [a, b] : chain.pairs) total += two_step(lat, c, a, b, g) + psi;
      for (auto [a, b] : chain.pairs) {
        auto [x, y] = lat.product_to_cap(a, b);
        RM acc = (two_step(lat, c, a, b, g) + psi) * Rational(chain.length()) - total;
        ASSERT_EQ(shift_columns(lat, acc, chain.g), cc.at(x, y, g)) << i;
      }
    }
  }
}

TEST(Property, ResidualMatchesIsometryPreservation) {
  Gen gen(105);
  auto lats = lattices();
  int compatible = 0;
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto p = gen.compatible(lat, gen.integer(0, 1));
    Connection<Rational> c = p.connection;
    switch (gen.integer(0, 2)) {
      case 0:
        break;
      case 1: {
        int a = gen.integer(0, lat.n() - 1);
        Elem g = gen.integer(0, lat.order() - 1);
        c.at(a, g)(gen.integer(0, lat.n() - 1), gen.integer(0, lat.n() - 1)) += gen.nonzero_rational();
        break;
      }
      default:
        c = gen.connection(lat);
    }
    bool r = is_compatible(lat, p.metric, c);
    compatible += r;
    ASSERT_EQ(r, isometry_preservation_check(lat, p.metric, c)) << i;
  }
  EXPECT_GT(compatible, kCases / 4);
  EXPECT_LT(compatible, kCases);
}

TEST(Property, ResidualsAreGaugeInvariant) {
  Gen gen(106);
  auto lats = lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto p = gen.compatible(lat, gen.integer(0, 1));
    auto c = i % 2 ? p.connection : gen.connection(lat);
    auto J = random_gauge(gen, lat, p);
    auto gauged = apply_gauge(lat, p.metric, c, J);
    ASSERT_EQ(compatibility_residual(lat, p.metric, gauged), compatibility_residual(lat, p.metric, c)) << i;
  }
}

TEST(Property, TransportComposesAlongPaths) {
  Gen gen(107);
  auto lats = lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto c = gen.connection(lat);
    Elem base = gen.integer(0, lat.order() - 1);
    std::vector<int> p1, p2;
    for (int k = gen.integer(0, 3); k > 0; --k) p1.push_back(gen.integer(0, lat.n() - 1));
    for (int k = gen.integer(0, 3); k > 0; --k) p2.push_back(gen.integer(0, lat.n() - 1));
    std::vector<int> whole = p1;
    whole.insert(whole.end(), p2.begin(), p2.end());
    ASSERT_EQ(transport_matrix(lat, c, base, whole),
              transport_matrix(lat, c, base, p1) * transport_matrix(lat, c, endpoint(lat, base, p1), p2))
        << i;
  }
}

TEST(Property, FrameConnectionPreservesEta) {
  Gen gen(108);
  auto lats = lattices();
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto p = gen.compatible(lat, gen.integer(0, 1));
    auto cf = build_coframe(lat, p.metric);
    auto L = frame_connection(lat, cf, p.connection);
    for (int a = 0; a < lat.n(); ++a)
      for (Elem g = 0; g < lat.order(); ++g)
        ASSERT_TRUE((L[a][g].transpose() * cf.eta * L[a][g]).approx_equal(cf.eta)) << i;
  }
}

TEST(Property, EinsteinHilbertRoutesAgreeOnTori) {
  Gen gen(109);
  std::vector<Lattice> lats = {torus({3, 3}), torus({3, 5}), torus({4, 3})};
  for (int i = 0; i < kCases; ++i) {
    const Lattice& lat = lats[i % lats.size()];
    auto p = gen.compatible(lat);
    auto d = einstein_hilbert_density(lat, p.metric, p.connection);
    for (Elem g = 0; g < lat.order(); ++g) ASSERT_NEAR(d.frame[g], d.scalar[g], 1e-9) << i;
  }
}
