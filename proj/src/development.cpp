#include "cayley/development.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

namespace cayley {

double NBein::inner(const std::vector<double>& a, const std::vector<double>& b) const {
  double s = 0;
  for (int i = 0; i < eta.rows(); ++i) s += a[i] * eta(i, i) * b[i];
  return s;
}

const DevNode* Development::find(const std::string& word) const {
  for (const auto& n : nodes)
    if (n.word == word) return &n;
  return nullptr;
}

std::string word_label(const Lattice& lat, const std::vector<int>& path) {
  bool short_names = true;
  for (int a = 0; a < lat.n(); ++a) short_names = short_names && lat.arrow_name(a).size() == 1;
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i && !short_names) out += '.';
    out += lat.arrow_name(path[i]);
  }
  return out;
}

bool FoldingReport::any_folded() const {
  return std::find(folded.begin(), folded.end(), true) != folded.end();
}

namespace {

template <class T>
std::vector<double> to_doubles(const std::vector<T>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(Num<T>::to_double(x));
  return out;
}

template <class T>
Development develop_impl(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c, Elem base,
                         int depth) {
  check_shapes(lat, c);
  if (base < 0 || base >= lat.order()) throw Error(errc::kUsage, "base site out of range");
  if (depth < 0) throw Error(errc::kUsage, "negative depth");
  const int n = lat.n();
  NBein nb = build_nbein(lat, m, base);

  Development d;
  d.base = base;
  d.depth = depth;
  for (int a = 0; a < n; ++a) d.arrows.push_back(lat.arrow_name(a));
  d.nbein = nb.U;
  d.eta = nb.eta;
  d.exact = Num<T>::backend == Backend::Exact;
  d.compatible = is_compatible(lat, m, c);

  auto place = [&](const std::vector<T>& coeff) { return nb.U * to_doubles(coeff); };
  auto exact_of = [&](const std::vector<T>& coeff) {
    std::vector<Rational> out;
    if constexpr (std::is_same_v<T, Rational>) out = coeff;
    return out;
  };

  std::vector<Matrix<T>> transport;  // per node: product of V along its path
  std::vector<std::vector<T>> coeffs;
  DevNode root{{}, "", base, {}, {}};
  coeffs.emplace_back(n, Num<T>::zero());
  root.pos = place(coeffs[0]);
  root.coeff = exact_of(coeffs[0]);
  d.nodes.push_back(root);
  transport.push_back(Matrix<T>::identity(n));
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (static_cast<int>(d.nodes[i].path.size()) >= depth) continue;
    for (int a = 0; a < n; ++a) {
      DevNode child;
      child.path = d.nodes[i].path;
      child.path.push_back(a);
      child.word = word_label(lat, child.path);
      child.site = lat.step(d.nodes[i].site, a);
      std::vector<T> co = coeffs[i] + transport[i].column(a);
      child.pos = place(co);
      child.coeff = exact_of(co);
      Matrix<T> next = transport[i] * c.at(a, d.nodes[i].site);
      d.edges.push_back({static_cast<int>(i), static_cast<int>(d.nodes.size()), a});
      d.nodes.push_back(std::move(child));
      coeffs.push_back(std::move(co));
      transport.push_back(std::move(next));
    }
  }

  auto node_pos = [&](const std::vector<int>& path) {
    const DevNode* nd = d.find(word_label(lat, path));
    return nd->pos;
  };
  auto add = [&](std::string type, std::string at, std::vector<double> origin, const std::vector<T>& v) {
    d.defects.push_back({std::move(type), std::move(at), std::move(origin), place(v), exact_of(v)});
  };
  const std::vector<double> zero(n, 0.0);

  if (depth >= 2) {
    // First-order gaps: u_a + V_ab compared with where the closed figure would end.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& pc = lat.product_class(a, b);
        std::vector<T> w = torsion_term(lat, c, a, b, base);
        std::string at = word_label(lat, {a, b});
        if (pc.sector == Sector::Biangle) {
          add("biangle", at, zero, w);
        } else if (pc.sector == Sector::Triangle) {
          add("triangle", at, node_pos({pc.product}), w - unit_vector<T>(n, pc.product));
        } else if (pc.chain_pos > 0) {
          auto [fa, fb] = lat.chains()[pc.chain].pairs.front();
          add("quadrangle", word_label(lat, {fa, fb}) + "/" + at, node_pos({a, b}),
              torsion_term(lat, c, fa, fb, base) - w);
        }
      }
  }
  if (depth >= 3) {
    // Second-order path dependence z - z' of each transported arrow k.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& pc = lat.product_class(a, b);
        Matrix<T> M = two_step(lat, c, a, b, base);
        for (int k = 0; k < n; ++k) {
          std::vector<T> z = M.column(k);
          std::string at = word_label(lat, {a, b, k});
          std::vector<double> tip_base = node_pos({a, b});
          if (pc.sector == Sector::Biangle) {
            std::vector<T> zp = unit_vector<T>(n, k);
            add("path_biangle", at, tip_base + place(zp), z - zp);
          } else if (pc.sector == Sector::Triangle) {
            std::vector<T> zp = c.at(pc.product, base).column(k);
            add("path_triangle", at, tip_base + place(zp), z - zp);
          } else if (pc.chain_pos > 0) {
            auto [fa, fb] = lat.chains()[pc.chain].pairs.front();
            std::vector<T> zf = two_step(lat, c, fa, fb, base).column(k);
            add("path_quadrangle", word_label(lat, {fa, fb, k}) + "/" + at, node_pos({fa, fb}) + place(z),
                zf - z);
          }
        }
      }
  }
  return d;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

}  // namespace

Development develop(const Lattice& lat, const MetricField<Rational>& m, const Connection<Rational>& c, Elem base,
                    int depth) {
  return develop_impl(lat, m, c, base, depth);
}

Development develop(const Lattice& lat, const MetricField<double>& m, const Connection<double>& c, Elem base,
                    int depth) {
  return develop_impl(lat, m, c, base, depth);
}

std::string render_svg(const Development& d, std::pair<int, int> projection) {
  const int dim = d.nbein.rows();
  auto [pi, pj] = projection;
  if (pi < 0 || pi >= dim || pj < -1 || pj >= dim || pi == pj)
    throw Error(errc::kUsage, "unknown projection (" + std::to_string(pi) + "," + std::to_string(pj) + ")");
  auto proj = [&](const std::vector<double>& p) {
    return std::pair<double, double>{p[pi], pj >= 0 ? p[pj] : 0.0};
  };
  const double unit = 40, margin = 30;
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  auto extend = [&](const std::vector<double>& p) {
    auto [x, y] = proj(p);
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  };
  for (const auto& n : d.nodes) extend(n.pos);
  for (const auto& df : d.defects) {
    extend(df.origin);
    extend(df.origin + df.vector);
  }
  auto X = [&](double x) { return fmt((x - minx) * unit + margin); };
  auto Y = [&](double y) { return fmt((maxy - y) * unit + margin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt((maxx - minx) * unit + 2 * margin)
     << "\" height=\"" << fmt((maxy - miny) * unit + 2 * margin) << "\">\n";
  os << "  <defs>\n"
        "    <marker id=\"head\" markerWidth=\"8\" markerHeight=\"6\" refX=\"8\" refY=\"3\" orient=\"auto\">"
        "<path d=\"M0,0 L8,3 L0,6 z\" fill=\"black\"/></marker>\n"
        "    <marker id=\"defect\" markerWidth=\"8\" markerHeight=\"6\" refX=\"8\" refY=\"3\" orient=\"auto\">"
        "<path d=\"M0,0 L8,3 L0,6 z\" fill=\"red\"/></marker>\n"
        "  </defs>\n";
  for (const auto& e : d.edges) {
    auto [x1, y1] = proj(d.nodes[e.from].pos);
    auto [x2, y2] = proj(d.nodes[e.to].pos);
    os << "  <line class=\"arrow\" x1=\"" << X(x1) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(x2) << "\" y2=\""
       << Y(y2) << "\" stroke=\"black\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
  }
  for (const auto& df : d.defects) {
    auto [x1, y1] = proj(df.origin);
    auto [x2, y2] = proj(df.origin + df.vector);
    if (std::hypot(x2 - x1, y2 - y1) < 1e-12) continue;
    os << "  <line class=\"" << df.type << "\" x1=\"" << X(x1) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(x2)
       << "\" y2=\"" << Y(y2) << "\" stroke=\"red\" stroke-width=\"1.2\" stroke-dasharray=\"4 3\" "
       << "marker-end=\"url(#defect)\"/>\n";
  }
  for (const auto& n : d.nodes) {
    auto [x, y] = proj(n.pos);
    os << "  <circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"2.5\" fill=\"black\"/>\n";
    os << "  <text x=\"" << fmt((x - minx) * unit + margin + 4) << "\" y=\"" << fmt((maxy - y) * unit + margin - 4)
       << "\" font-size=\"10\">" << (n.word.empty() ? std::string("base") : n.word) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cayley
