#include <gtest/gtest.h>

#include "support.hpp"

using namespace cayley;
using namespace cayley::testing;

namespace {

// Exact u-basis coefficients, e.g. coeff(1, -1) = u1 - u2.
std::vector<Rational> coeff(std::int64_t a, std::int64_t b) { return {R(a), R(b)}; }

std::vector<Rational> node(const Development& d, const std::string& word) {
  const DevNode* n = d.find(word);
  EXPECT_NE(n, nullptr) << word;
  return n ? n->coeff : std::vector<Rational>{};
}

// Developed vector of the last arrow of `word`: position(word) - position(prefix).
std::vector<Rational> step(const Development& d, const std::string& word) {
  return node(d, word) - node(d, word.substr(0, word.size() - 1));
}

const Defect* defect(const Development& d, const std::string& type, const std::string& at) {
  for (const auto& df : d.defects)
    if (df.type == type && df.at == at) return &df;
  return nullptr;
}

}  // namespace

TEST(Develop, Z3SphericalTables) {
  Lattice lat = z3();
  auto d = develop(lat, constant_metric(lat, RM::identity(2)), z3_spherical(), 0, 3);
  EXPECT_TRUE(d.exact);
  EXPECT_TRUE(d.compatible);
  EXPECT_EQ(step(d, "11"), coeff(0, 1));
  EXPECT_EQ(step(d, "12"), coeff(-1, 0));
  EXPECT_EQ(step(d, "21"), coeff(0, -1));
  EXPECT_EQ(step(d, "22"), coeff(1, 0));
  EXPECT_EQ(node(d, "11"), coeff(1, 1));
  EXPECT_EQ(node(d, "12"), coeff(0, 0));
  EXPECT_EQ(node(d, "21"), coeff(0, 0));
  EXPECT_EQ(node(d, "22"), coeff(1, 1));
  EXPECT_EQ(step(d, "111"), coeff(-1, 0));
  EXPECT_EQ(step(d, "221"), coeff(-1, 0));
  EXPECT_EQ(step(d, "112"), coeff(0, -1));
  EXPECT_EQ(step(d, "222"), coeff(0, -1));
  ASSERT_NE(defect(d, "triangle", "11"), nullptr);
  EXPECT_EQ(defect(d, "triangle", "11")->coeff, coeff(1, 0));
  EXPECT_EQ(defect(d, "triangle", "22")->coeff, coeff(0, 1));
  EXPECT_EQ(defect(d, "biangle", "12")->coeff, coeff(0, 0));
  // Identity metric: u1, u2 orthonormal.
  EXPECT_EQ(node(d, "1"), coeff(1, 0));
  EXPECT_NEAR(d.find("11")->pos[0], 1.0, 1e-12);
  EXPECT_NEAR(d.find("11")->pos[1], 1.0, 1e-12);
}

TEST(Develop, Z3LeviCivitaClosesTriangle) {
  Lattice lat = z3();
  auto V = parameterize(lat, TorsionMask::full()).instantiate<Rational>({});
  auto d = develop(lat, constant_metric(lat, tetra_metric()), constant_conn(lat, V), 0, 3);
  for (const auto& df : d.defects) EXPECT_TRUE(is_zero_vector(df.coeff)) << df.type << " " << df.at;
  // Every site lands on one of three points; the triangle is equilateral.
  EXPECT_EQ(node(d, "11"), node(d, "2"));
  EXPECT_EQ(node(d, "12"), coeff(0, 0));
  const auto& u1 = d.find("1")->pos;
  const auto& u2 = d.find("2")->pos;
  auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };
  EXPECT_NEAR(dist(u1, u2), 1.0, 1e-12);
  EXPECT_NEAR(dist(u1, {0, 0}), 1.0, 1e-12);
}

TEST(Develop, Z4RegularTetrahedron) {
  Lattice lat = z4_12();
  auto c = constant_conn(lat, {RM{{R(-1), R(0)}, {R(1), R(1)}}, RM{{R(-1), R(0)}, {R(0), R(-1)}}});
  auto d = develop(lat, constant_metric(lat, tetra_metric()), c, 0, 3);
  EXPECT_EQ(step(d, "11"), coeff(-1, 1));
  EXPECT_EQ(step(d, "12"), coeff(0, 1));
  EXPECT_EQ(step(d, "21"), coeff(-1, 0));
  EXPECT_EQ(step(d, "22"), coeff(0, -1));
  ASSERT_NE(defect(d, "quadrangle", "12/21"), nullptr);
  EXPECT_EQ(defect(d, "quadrangle", "12/21")->coeff, coeff(2, 0));
  EXPECT_EQ(step(d, "111"), coeff(1, 0));
  EXPECT_EQ(step(d, "112"), coeff(0, 1));
  EXPECT_EQ(defect(d, "path_triangle", "111")->coeff, coeff(2, 0));
  EXPECT_EQ(defect(d, "path_triangle", "112")->coeff, coeff(0, 2));
  EXPECT_FALSE(folding_report(lat, c).dyad.empty());
  EXPECT_TRUE(folding_report(lat, c).dyad_ok);
}

TEST(Develop, Z4BiangleTorsion) {
  Lattice lat = z4_12();
  auto c = constant_conn(lat, {RM{{R(-1), R(0)}, {R(1), R(1)}}, RM::identity(2)});
  auto d = develop(lat, constant_metric(lat, tetra_metric()), c, 0, 3);
  EXPECT_EQ(step(d, "22"), coeff(0, 1));
  EXPECT_EQ(defect(d, "biangle", "22")->coeff, coeff(0, 2));
  EXPECT_EQ(node(d, "11"), coeff(0, 1));
  EXPECT_EQ(node(d, "12"), node(d, "21"));
  EXPECT_EQ(step(d, "121"), coeff(-1, 1));
  EXPECT_EQ(step(d, "211"), coeff(-1, 1));
  EXPECT_EQ(step(d, "122"), coeff(0, 1));
  EXPECT_EQ(step(d, "212"), coeff(0, 1));
  for (const auto& df : d.defects)
    if (df.type.rfind("path_", 0) == 0) EXPECT_TRUE(is_zero_vector(df.coeff)) << df.at;
}

TEST(Develop, Z413Teleparallel) {
  Lattice lat = z4_13();
  RM v{{R(0), R(-1)}, {R(-1), R(0)}};
  auto c = constant_conn(lat, {v, v});
  auto d = develop(lat, constant_metric(lat, tetra_metric()), c, 0, 3);
  EXPECT_EQ(step(d, "11"), coeff(0, -1));
  EXPECT_EQ(step(d, "13"), coeff(-1, 0));
  EXPECT_EQ(step(d, "31"), coeff(0, -1));
  EXPECT_EQ(step(d, "33"), coeff(-1, 0));
  ASSERT_NE(defect(d, "quadrangle", "11/33"), nullptr);
  EXPECT_EQ(defect(d, "quadrangle", "11/33")->coeff, coeff(2, -2));
  auto fold = folding_report(lat, c, -1);
  EXPECT_FALSE(fold.any_folded());
  EXPECT_TRUE(folding_report(lat, c, 1).any_folded());
}

TEST(Develop, FloatBackendAgrees) {
  Lattice lat = z3();
  auto exact = develop(lat, constant_metric(lat, tetra_metric()), z3_spherical(), 0, 3);
  MetricField<double> md;
  for (Elem g = 0; g < 3; ++g) md.g.push_back(tetra_metric().cast<double>());
  auto fl = develop(lat, md, z3_spherical().cast<double>(), 0, 3);
  EXPECT_FALSE(fl.exact);
  ASSERT_EQ(exact.nodes.size(), fl.nodes.size());
  for (std::size_t i = 0; i < exact.nodes.size(); ++i)
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(exact.nodes[i].pos[k], fl.nodes[i].pos[k], 1e-12);
}

TEST(Develop, NbeinGram) {
  Lattice lat = z4_12();
  auto nb = build_nbein(lat, constant_metric(lat, tetra_metric()), 0);
  EXPECT_NEAR(nb.inner(nb.u(0), nb.u(0)), 1.0, 1e-12);
  EXPECT_NEAR(nb.inner(nb.u(0), nb.u(1)), 0.5, 1e-12);
  EXPECT_NEAR(nb.inner(nb.u(1), nb.u(1)), 1.0, 1e-12);
}

TEST(Develop, JsonRoundTripAndSvg) {
  Lattice lat = z4_12();
  auto c = constant_conn(lat, {RM{{R(-1), R(0)}, {R(1), R(1)}}, RM{{R(-1), R(0)}, {R(0), R(-1)}}});
  auto d = develop(lat, constant_metric(lat, tetra_metric()), c, 0, 3);
  auto back = parse_development(json::parse(development_json(d).dump()));
  ASSERT_EQ(back.nodes.size(), d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    EXPECT_EQ(back.nodes[i].word, d.nodes[i].word);
    EXPECT_EQ(back.nodes[i].coeff, d.nodes[i].coeff);
  }
  EXPECT_EQ(back.edges, d.edges);
  std::string svg = render_svg(d);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(svg, render_svg(d));
  EXPECT_THROW(render_svg(d, {0, 5}), Error);
}

TEST(Develop, RejectsBadArguments) {
  Lattice lat = z3();
  auto m = constant_metric(lat, RM::identity(2));
  EXPECT_THROW(develop(lat, m, z3_spherical(), 5, 2), Error);
  EXPECT_THROW(develop(lat, m, z3_spherical(), 0, -1), Error);
}
