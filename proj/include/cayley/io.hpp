#pragma once

#include <string>

#include <json.hpp>

#include "cayley/coordinates.hpp"
#include "cayley/development.hpp"

namespace cayley {

using json = nlohmann::json;

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"group": "cyclic:4" | "symmetric:3" | "torus:[5,5]" | {"table": [[...]]}, "arrows": [...]}
Group parse_group(const json& j);
Elem parse_element(const Group& g, const json& j);
json element_json(const Group& g, Elem e);
Lattice parse_lattice(const json& j);
json lattice_json(const Lattice& lat);

// Counts and lists of biangles, triangles and quadrangle chains.
json lattice_info_json(const Lattice& lat);

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(double d) { return d; }

template <class T>
T parse_number(const json& j);
template <>
Rational parse_number<Rational>(const json& j);
template <>
double parse_number<double>(const json& j);

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <class T>
json vector_json(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <class T>
Matrix<T> parse_matrix(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw Error(errc::kSchema, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Matrix<T> m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      throw Error(errc::kSchema, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    for (int c = 0; c < n; ++c) m(r, c) = parse_number<T>(j[r][c]);
  }
  return m;
}

// {"constant": M} or {"per_site": {"<elem>": M}}
template <class T>
MatrixField<T> parse_matrix_field(const json& j, const Lattice& lat, const std::string& what) {
  if (!j.is_object()) throw Error(errc::kSchema, what + " must be an object");
  if (j.contains("constant")) return MatrixField<T>(lat.order(), parse_matrix<T>(j["constant"], lat.n()));
  if (!j.contains("per_site")) throw Error(errc::kSchema, what + " needs 'constant' or 'per_site'");
  const auto& ps = j["per_site"];
  if (!ps.is_object()) throw Error(errc::kSchema, what + ": 'per_site' must be an object");
  std::vector<std::optional<Matrix<T>>> vals(lat.order());
  for (auto it = ps.begin(); it != ps.end(); ++it) {
    auto e = lat.group().find(it.key());
    if (!e) throw Error(errc::kSchema, what + ": unknown site '" + it.key() + "'");
    vals[*e] = parse_matrix<T>(it.value(), lat.n());
  }
  MatrixField<T> out;
  for (Elem g = 0; g < lat.order(); ++g) {
    if (!vals[g]) throw Error(errc::kSchema, what + ": missing site " + lat.group().name(g));
    out.push_back(*vals[g]);
  }
  return out;
}

template <class T>
json matrix_field_json(const Lattice& lat, const MatrixField<T>& f) {
  bool constant = true;
  for (const auto& m : f) constant = constant && m == f.front();
  if (constant) return json{{"constant", matrix_json(f.front())}};
  json ps = json::object();
  for (Elem g = 0; g < lat.order(); ++g) ps[lat.group().name(g)] = matrix_json(f[g]);
  return json{{"per_site", ps}};
}

template <class T>
MetricField<T> parse_metric(const json& j, const Lattice& lat) {
  return MetricField<T>(parse_matrix_field<T>(j, lat, "metric"));
}

template <class T>
json metric_json(const Lattice& lat, const MetricField<T>& m) {
  return matrix_field_json(lat, m.g);
}

// {"per_arrow": {"<h>": {"constant": M} | {"per_site": {...}}}}
template <class T>
Connection<T> parse_connection(const json& j, const Lattice& lat) {
  if (!j.is_object() || !j.contains("per_arrow") || !j["per_arrow"].is_object())
    throw Error(errc::kSchema, "connection needs a 'per_arrow' object");
  const auto& pa = j["per_arrow"];
  Connection<T> c;
  c.V.resize(lat.n());
  for (int a = 0; a < lat.n(); ++a) {
    if (!pa.contains(lat.arrow_name(a)))
      throw Error(errc::kArrowMismatch, "connection has no entry for arrow " + lat.arrow_name(a));
    c.V[a] = parse_matrix_field<T>(pa[lat.arrow_name(a)], lat, "connection arrow " + lat.arrow_name(a));
  }
  for (auto it = pa.begin(); it != pa.end(); ++it) {
    auto e = lat.group().find(it.key());
    if (!e || lat.arrow_index(*e) < 0) throw Error(errc::kArrowMismatch, "connection arrow '" + it.key() + "' not in S");
  }
  return c;
}

template <class T>
json connection_json(const Lattice& lat, const Connection<T>& c) {
  json pa = json::object();
  for (int a = 0; a < lat.n(); ++a) pa[lat.arrow_name(a)] = matrix_field_json(lat, c.V[a]);
  return json{{"per_arrow", pa}};
}

// {"values": {"<elem>": value}}
template <class T>
ScalarField<T> parse_scalar_field(const json& j, const Lattice& lat) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
    throw Error(errc::kSchema, "scalar field needs a 'values' object");
  ScalarField<T> f(lat.order());
  std::vector<bool> seen(lat.order(), false);
  for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
    auto e = lat.group().find(it.key());
    if (!e) throw Error(errc::kSchema, "scalar field: unknown site '" + it.key() + "'");
    f[*e] = parse_number<T>(it.value());
    seen[*e] = true;
  }
  for (Elem g = 0; g < lat.order(); ++g)
    if (!seen[g]) throw Error(errc::kSchema, "scalar field: missing site " + lat.group().name(g));
  return f;
}

template <class T>
json scalar_field_json(const Lattice& lat, const ScalarField<T>& f) {
  json v = json::object();
  for (Elem g = 0; g < lat.order(); ++g) v[lat.group().name(g)] = to_json(f[g]);
  return json{{"values", v}};
}

inline std::string pair_key(const Lattice& lat, int x, int y) { return lat.arrow_name(x) + "," + lat.arrow_name(y); }

// {sector: {"h1,h2": {"product": name, "sites": {site: value}}}}
template <class T, class Get>
json sector_report(const Lattice& lat, Get get) {
  json out = {{"biangle", json::object()}, {"triangle", json::object()}, {"quadrangle", json::object()}};
  for (int x = 0; x < lat.n(); ++x)
    for (int y = 0; y < lat.n(); ++y) {
      const auto& pc = lat.cap_class(x, y);
      json entry;
      Elem prod = lat.group().mul(lat.arrow(y), lat.arrow(x));
      entry["product"] = lat.group().name(prod);
      json sites = json::object();
      for (Elem g = 0; g < lat.order(); ++g) sites[lat.group().name(g)] = get(x, y, g);
      entry["sites"] = sites;
      out[sector_name(pc.sector)][pair_key(lat, x, y)] = entry;
    }
  return out;
}

template <class T>
json torsion_json(const Lattice& lat, const TorsionComponents<T>& tc) {
  return json{{"torsion", sector_report<T>(lat, [&](int x, int y, Elem g) { return vector_json(tc.at(x, y, g)); })},
              {"zero", tc.is_zero()}};
}

template <class T>
json curvature_json(const Lattice& lat, const CurvatureComponents<T>& cc) {
  return json{{"curvature", sector_report<T>(lat, [&](int x, int y, Elem g) { return matrix_json(cc.at(x, y, g)); })},
              {"zero", cc.is_zero()}};
}

template <class T>
json per_site_matrices(const Lattice& lat, const MatrixField<T>& f) {
  json o = json::object();
  for (Elem g = 0; g < lat.order(); ++g) o[lat.group().name(g)] = matrix_json(f[g]);
  return o;
}

template <class T>
json ricci_json(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c) {
  auto cc = curvature(lat, c);
  auto r = ricci(lat, cc);
  auto R = curvature_scalar(lat, m, r.ric);
  json out = curvature_json(lat, cc);
  out["ricci"] = per_site_matrices(lat, r.ric);
  out["ricci_alternative"] = per_site_matrices(lat, r.alternative);
  out["ricci_diagnostic"] = per_site_matrices(lat, r.diagnostic);
  out["scalar"] = scalar_field_json(lat, R);
  return out;
}

json solve_report_json(const Lattice& lat, const SolveReport& rep);
json development_json(const Development& d);
Development parse_development(const json& j);

}  // namespace cayley
