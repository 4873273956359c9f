#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayley/solver.hpp"

namespace cayley {

// Vectors u_h (columns of U) whose Gram matrix under eta is the metric at the base site.
struct NBein {
  Matrix<double> U;
  Matrix<double> eta;
  std::vector<double> u(int h) const { return U.column(h); }
  double inner(const std::vector<double>& a, const std::vector<double>& b) const;
};

template <class T>
NBein build_nbein(const Lattice& lat, const MetricField<T>& m, Elem base) {
  auto sig = validate_metric(lat, m);
  if (!sig.constant) throw Error(errc::kSignature, "metric signature is not constant over the group");
  auto f = factor_metric(m[base].template cast<double>());
  return NBein{f.E, f.eta};
}

struct DevNode {
  std::vector<int> path;         // arrow indices from the base
  std::string word;
  Elem site = 0;
  std::vector<double> pos;
  std::vector<Rational> coeff;   // exact u-basis coefficients of pos (empty on the float backend)
  friend bool operator==(const DevNode&, const DevNode&) = default;
};

struct DevEdge {
  int from = 0;
  int to = 0;
  int arrow = 0;
  friend bool operator==(const DevEdge&, const DevEdge&) = default;
};

// Gap types: "biangle", "triangle", "quadrangle".  Path-dependence types:
// "path_biangle", "path_triangle", "path_quadrangle".  The dashed vector runs from
// `origin` to origin + vector.
struct Defect {
  std::string type;
  std::string at;                // word naming the pair (gaps) or pair plus transported arrow
  std::vector<double> origin;
  std::vector<double> vector;
  std::vector<Rational> coeff;   // exact u-basis coefficients of `vector`
  friend bool operator==(const Defect&, const Defect&) = default;
};

struct Development {
  Elem base = 0;
  int depth = 0;
  std::vector<std::string> arrows;
  Matrix<double> nbein;
  Matrix<double> eta;
  std::vector<DevNode> nodes;
  std::vector<DevEdge> edges;
  std::vector<Defect> defects;
  bool exact = false;
  bool compatible = true;
  friend bool operator==(const Development&, const Development&) = default;

  const DevNode* find(const std::string& word) const;
};

// Word label: arrow names concatenated, separated by '.' when some name is longer than
// one character.
std::string word_label(const Lattice& lat, const std::vector<int>& path);

// Breadth-first development up to `depth` steps.  Gap defects need depth >= 2 and
// path-dependence defects need depth >= 3.
Development develop(const Lattice& lat, const MetricField<Rational>& m, const Connection<Rational>& c, Elem base,
                    int depth);
Development develop(const Lattice& lat, const MetricField<double>& m, const Connection<double>& c, Elem base,
                    int depth);

struct FoldingReport {
  int expected_sign = 1;
  std::vector<std::vector<int>> det_sign;  // [arrow][site]
  std::vector<bool> folded;                // per arrow: some site has the wrong sign
  std::vector<int> dyad;                   // [site], |S| = 2 only
  bool dyad_ok = true;
  bool any_folded() const;
};

template <class T>
FoldingReport folding_report(const Lattice& lat, const Connection<T>& c, int expected_sign = 1) {
  auto flags = orientation_flags(lat, c);
  FoldingReport r;
  r.expected_sign = expected_sign;
  r.det_sign = flags.det_sign;
  for (const auto& row : r.det_sign)
    r.folded.push_back(std::any_of(row.begin(), row.end(), [&](int s) { return s != expected_sign; }));
  r.dyad = flags.dyad;
  for (int s : r.dyad) r.dyad_ok = r.dyad_ok && s > 0;
  return r;
}

// SVG with solid black lattice arrows, dashed red defects and 40px per unit.
// `projection` selects the two coordinates drawn (default 0 and 1).
std::string render_svg(const Development& d, std::pair<int, int> projection = {0, 1});

}  // namespace cayley
