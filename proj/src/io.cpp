#include "cayley/io.hpp"

#include <fstream>
#include <sstream>

namespace cayley {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kFileNotFound, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(errc::kParse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(errc::kFileNotFound, "cannot write " + path);
  out << text;
}

template <>
Rational parse_number<Rational>(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) return Rational::parse(j.dump());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw Error(errc::kParse, std::string("bad number: ") + e.what());
  }
  throw Error(errc::kSchema, "expected a number or \"p/q\" string, got " + j.dump());
}

template <>
double parse_number<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  return parse_number<Rational>(j).to_double();
}

Group parse_group(const json& j) {
  if (j.is_object()) {
    if (!j.contains("table")) throw Error(errc::kSchema, "group object needs 'table'");
    try {
      return Group::from_table(j["table"].get<std::vector<std::vector<int>>>());
    } catch (const json::exception& e) {
      throw Error(errc::kSchema, std::string("group table: ") + e.what());
    }
  }
  if (!j.is_string()) throw Error(errc::kSchema, "group must be a descriptor string or a table object");
  const std::string s = j.get<std::string>();
  auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(errc::kSchema, "group descriptor '" + s + "' lacks ':'");
  const std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
  try {
    if (kind == "cyclic") return Group::cyclic(std::stoi(arg));
    if (kind == "symmetric") return Group::symmetric(std::stoi(arg));
    if (kind == "torus") return Group::torus(json::parse(arg).get<std::vector<int>>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(errc::kSchema, "group descriptor '" + s + "': " + e.what());
  }
  throw Error(errc::kSchema, "unknown group kind '" + kind + "'");
}

Elem parse_element(const Group& g, const json& j) {
  switch (g.kind()) {
    case Group::Kind::Cyclic:
    case Group::Kind::Table:
      if (j.is_number_integer()) {
        int v = j.get<int>();
        if (g.kind() == Group::Kind::Cyclic) v = ((v % g.order()) + g.order()) % g.order();
        if (v < 0 || v >= g.order()) throw Error(errc::kSchema, "element " + j.dump() + " out of range");
        return v;
      }
      break;
    case Group::Kind::Torus:
      if (j.is_array()) {
        auto c = j.get<std::vector<int>>();
        if (c.size() != g.moduli().size()) throw Error(errc::kSchema, "torus element " + j.dump() + " has wrong rank");
        return g.from_coords(c);
      }
      break;
    case Group::Kind::Symmetric:
      if (j.is_string()) {
        if (auto e = g.parse_cycles(j.get<std::string>())) return *e;
        throw Error(errc::kSchema, "bad permutation " + j.dump());
      }
      break;
  }
  if (j.is_string())
    if (auto e = g.find(j.get<std::string>())) return *e;
  throw Error(errc::kSchema, "cannot read group element " + j.dump());
}

json element_json(const Group& g, Elem e) {
  switch (g.kind()) {
    case Group::Kind::Cyclic:
    case Group::Kind::Table:
      return e;
    case Group::Kind::Torus:
      return g.coords(e);
    case Group::Kind::Symmetric:
      return g.name(e);
  }
  return e;
}

Lattice parse_lattice(const json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("arrows") || !j["arrows"].is_array())
    throw Error(errc::kSchema, "lattice needs 'group' and an 'arrows' array");
  Group g = parse_group(j["group"]);
  std::vector<Elem> arrows;
  for (const auto& a : j["arrows"]) {
    Elem e = parse_element(g, a);
    if (std::find(arrows.begin(), arrows.end(), e) != arrows.end())
      throw Error(errc::kSchema, "duplicate arrow " + a.dump());
    arrows.push_back(e);
  }
  return Lattice(std::move(g), std::move(arrows));
}

json lattice_json(const Lattice& lat) {
  json j;
  if (lat.group().kind() == Group::Kind::Table)
    j["group"] = json{{"table", lat.group().cayley_table()}};
  else
    j["group"] = lat.group().descriptor();
  json arrows = json::array();
  for (Elem a : lat.arrows()) arrows.push_back(element_json(lat.group(), a));
  j["arrows"] = arrows;
  return j;
}

json lattice_info_json(const Lattice& lat) {
  auto pair_list = [&](const std::vector<std::pair<int, int>>& ps) {
    json a = json::array();
    for (auto [x, y] : ps) a.push_back(json::array({lat.arrow_name(x), lat.arrow_name(y)}));
    return a;
  };
  json chains = json::array();
  for (const auto& c : lat.chains())
    chains.push_back({{"product", lat.group().name(c.g)}, {"length", c.length()}, {"pairs", pair_list(c.pairs)}});
  int quads = 0;
  for (const auto& c : lat.chains()) quads += c.length();
  json j;
  j["lattice"] = lattice_json(lat);
  j["order"] = lat.order();
  j["arrow_names"] = [&] {
    json a = json::array();
    for (int i = 0; i < lat.n(); ++i) a.push_back(lat.arrow_name(i));
    return a;
  }();
  j["abelian"] = lat.group().abelian();
  j["generates"] = lat.generates();
  j["biangles"] = pair_list(lat.biangles());
  j["triangles"] = pair_list(lat.triangles());
  j["quadrangle_chains"] = chains;
  j["counts"] = {{"biangles", lat.biangles().size()}, {"triangles", lat.triangles().size()}, {"quadrangles", quads}};
  return j;
}

namespace {

json solution_json(const Lattice& lat, const Solution& s) {
  json j;
  j["exact"] = s.exact;
  json V = json::object();
  for (int a = 0; a < lat.n(); ++a)
    V[lat.arrow_name(a)] = s.exact ? matrix_json(s.exact_V[a]) : matrix_json(s.V[a]);
  j["V"] = V;
  j["params"] = s.params;
  j["residual"] = s.residual;
  j["flat"] = s.flat;
  json det = json::object();
  for (int a = 0; a < lat.n(); ++a) det[lat.arrow_name(a)] = s.det_sign[a];
  j["det_sign"] = det;
  return j;
}

}  // namespace

json solve_report_json(const Lattice& lat, const SolveReport& rep) {
  json j;
  j["mask"] = rep.mask.str();
  j["constant_connection"] = rep.constant_connection;
  j["parameters"] = rep.param.param_names;
  if (rep.constant_connection) {
    json sols = json::array();
    for (const auto& s : rep.solutions) sols.push_back(solution_json(lat, s));
    j["solutions"] = sols;
    j["count"] = rep.solutions.size();
  } else {
    json ps = json::object();
    for (Elem g = 0; g < lat.order(); ++g) {
      json sols = json::array();
      for (const auto& s : rep.per_site[g]) sols.push_back(solution_json(lat, s));
      ps[lat.group().name(g)] = sols;
    }
    j["per_site"] = ps;
  }
  return j;
}

json development_json(const Development& d) {
  json j;
  j["base"] = d.base;
  j["depth"] = d.depth;
  j["arrows"] = d.arrows;
  j["nbein"] = matrix_json(d.nbein);
  j["eta"] = matrix_json(d.eta);
  j["exact"] = d.exact;
  j["compatible"] = d.compatible;
  json nodes = json::array();
  for (const auto& n : d.nodes)
    nodes.push_back({{"word", n.word}, {"path", n.path}, {"site", n.site}, {"pos", n.pos}, {"coeff", vector_json(n.coeff)}});
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : d.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"arrow", e.arrow}});
  j["edges"] = edges;
  json defects = json::array();
  for (const auto& df : d.defects)
    defects.push_back({{"type", df.type},
                       {"at", df.at},
                       {"origin", df.origin},
                       {"vector", df.vector},
                       {"coeff", vector_json(df.coeff)}});
  j["defects"] = defects;
  return j;
}

namespace {

Matrix<double> parse_dmatrix(const json& j) {
  const int r = static_cast<int>(j.size());
  Matrix<double> m(r, r ? static_cast<int>(j[0].size()) : 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

std::vector<Rational> parse_rvec(const json& j) {
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(parse_number<Rational>(x));
  return v;
}

}  // namespace

Development parse_development(const json& j) {
  try {
    Development d;
    d.base = j.at("base").get<int>();
    d.depth = j.at("depth").get<int>();
    d.arrows = j.at("arrows").get<std::vector<std::string>>();
    d.nbein = parse_dmatrix(j.at("nbein"));
    d.eta = parse_dmatrix(j.at("eta"));
    d.exact = j.at("exact").get<bool>();
    d.compatible = j.at("compatible").get<bool>();
    for (const auto& n : j.at("nodes"))
      d.nodes.push_back({n.at("path").get<std::vector<int>>(), n.at("word").get<std::string>(), n.at("site").get<int>(),
                         n.at("pos").get<std::vector<double>>(), parse_rvec(n.at("coeff"))});
    for (const auto& e : j.at("edges"))
      d.edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("arrow").get<int>()});
    for (const auto& df : j.at("defects"))
      d.defects.push_back({df.at("type").get<std::string>(), df.at("at").get<std::string>(),
                           df.at("origin").get<std::vector<double>>(), df.at("vector").get<std::vector<double>>(),
                           parse_rvec(df.at("coeff"))});
    return d;
  } catch (const json::exception& e) {
    throw Error(errc::kSchema, std::string("development: ") + e.what());
  }
}

}  // namespace cayley
