// cayley-geom: command-line front end for the cayley library.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cayley/io.hpp"

using namespace cayley;

namespace {

struct Common {
  std::string lattice, metric, connection, out;
  std::string backend = "exact";
  int threads = 0;
};

void emit(const Common& o, const std::string& text) {
  if (o.out.empty() || o.out == "-")
    std::cout << text;
  else
    write_text_file(o.out, text);
}

void emit_json(const Common& o, const json& j) { emit(o, j.dump(2) + "\n"); }

Lattice load_lattice(const Common& o) {
  if (o.lattice.empty()) throw Error(errc::kUsage, "--lattice is required");
  return parse_lattice(read_json_file(o.lattice));
}

template <class T>
MetricField<T> load_metric(const Common& o, const Lattice& lat) {
  if (o.metric.empty()) throw Error(errc::kUsage, "--metric is required");
  return parse_metric<T>(read_json_file(o.metric), lat);
}

template <class T>
Connection<T> load_connection(const Common& o, const Lattice& lat) {
  if (o.connection.empty()) throw Error(errc::kUsage, "--connection is required");
  return parse_connection<T>(read_json_file(o.connection), lat);
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CAYLEY_GEOM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

bool exact_backend(const Common& o) {
  if (o.backend == "exact") return true;
  if (o.backend == "float") return false;
  throw Error(errc::kUsage, "unknown backend '" + o.backend + "'");
}

template <class T>
json metric_check(const Lattice& lat, const MetricField<T>& m) {
  auto sig = validate_metric(lat, m);
  json sites = json::object();
  for (Elem g = 0; g < lat.order(); ++g)
    sites[lat.group().name(g)] = {{"positive", sig.per_site[g].first}, {"negative", sig.per_site[g].second}};
  auto ic = invariance_class(lat, m);
  json killing = json::object();
  for (int a = 0; a < lat.n(); ++a) killing[lat.arrow_name(a)] = killing_check(lat, m, a).ok;
  return {{"valid", true},
          {"signature", sites},
          {"constant_signature", sig.constant},
          {"invariance", {{"left", ic.left}, {"right", ic.right}, {"bi", ic.bi}, {"ad_invariant", ic.ad_invariant}}},
          {"killing", killing}};
}

// Metric check without a lattice: every matrix must be symmetric and nonsingular.
json metric_check_standalone(const json& mj) {
  auto check = [](const std::string& site, const json& mat) {
    if (!mat.is_array() || mat.empty()) throw Error(errc::kSchema, "metric at site " + site + " is not a matrix");
    const int n = static_cast<int>(mat.size());
    auto m = parse_matrix<Rational>(mat, n);
    if (!m.is_symmetric()) throw Error(errc::kAsymmetric, "asymmetric at site " + site);
    auto [p, q, z] = inertia(m);
    if (z) throw Error(errc::kSingular, "singular at site " + site);
    return json{{"positive", p}, {"negative", q}};
  };
  json sites = json::object();
  if (mj.contains("constant")) {
    sites["*"] = check("*", mj["constant"]);
  } else if (mj.contains("per_site") && mj["per_site"].is_object()) {
    for (auto it = mj["per_site"].begin(); it != mj["per_site"].end(); ++it) sites[it.key()] = check(it.key(), it.value());
  } else {
    throw Error(errc::kSchema, "metric needs 'constant' or 'per_site'");
  }
  bool constant = true;
  for (const auto& s : sites) constant = constant && s == sites.begin().value();
  return {{"valid", true}, {"signature", sites}, {"constant_signature", constant}};
}

template <class T>
json compat_check(const Lattice& lat, const MetricField<T>& m, const Connection<T>& c) {
  validate_metric(lat, m);
  check_shapes(lat, c);
  auto res = compatibility_residual(lat, m, c);
  json sites = json::object();
  for (Elem g = 0; g < lat.order(); ++g) {
    json per = json::object();
    for (int a = 0; a < lat.n(); ++a) per[lat.arrow_name(a)] = matrix_json(res[g][a]);
    sites[lat.group().name(g)] = per;
  }
  bool ok = is_compatible(lat, m, c);
  return {{"compatible", ok},
          {"isometry_preservation", isometry_preservation_check(lat, m, c)},
          {"max_residual", max_residual(res)},
          {"residual", sites}};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(errc::kUsage, "bad integer list '" + s + "'");
    }
  }
  return out;
}

Elem parse_site(const Lattice& lat, const std::string& s) {
  if (auto e = lat.group().find(s)) return *e;
  try {
    return parse_element(lat.group(), json::parse(s));
  } catch (const json::exception&) {
    throw Error(errc::kUsage, "unknown site '" + s + "'");
  }
}

template <class T>
json coframe_report(const Lattice& lat, const MetricField<T>& m, const std::optional<Connection<T>>& c) {
  Coframe cf = build_coframe(lat, m);
  json j;
  j["eta"] = matrix_json(cf.eta);
  j["E"] = per_site_matrices(lat, cf.E);
  j["Ebar"] = per_site_matrices(lat, cf.Ebar);
  if (c) {
    auto L = frame_connection(lat, cf, *c);
    json frame = json::object();
    double worst = 0;
    for (int a = 0; a < lat.n(); ++a) {
      frame[lat.arrow_name(a)] = per_site_matrices(lat, L[a]);
      for (const auto& l : L[a]) worst = std::max(worst, (l.transpose() * cf.eta * l - cf.eta).max_abs());
    }
    j["L"] = frame;
    j["orthogonality_residual"] = worst;
    if (lat.n() == 2 && cf.eta == Matrix<double>::identity(2)) {
      json ang = json::object();
      for (int a = 0; a < lat.n(); ++a) {
        json per = json::object();
        for (Elem g = 0; g < lat.order(); ++g) per[lat.group().name(g)] = rotation_angle(L[a][g]);
        ang[lat.arrow_name(a)] = per;
      }
      j["rotation_angle"] = ang;
    }
  }
  return j;
}

json checks_json(const std::vector<CheckItem>& items) {
  json j = json::object();
  bool all = true;
  for (const auto& c : items) {
    j[c.name] = c.ok;
    all = all && c.ok;
  }
  return {{"checks", j}, {"ok", all}};
}

template <class T>
json hypercubic_report(const Lattice& lat, const T& kappa, const std::optional<Connection<T>>& c,
                       const std::optional<MetricField<T>>& m, const std::string& report) {
  auto sys = hypercubic_calculus(lat, kappa);
  json j;
  j["kappa"] = to_json(kappa);
  json coords = json::array();
  for (const auto& x : sys.x) coords.push_back(scalar_field_json(lat, x)["values"]);
  j["coordinates"] = coords;
  j["valid"] = coordinates_valid(lat, sys.x);
  if (!c) return j;
  const int n = lat.n();
  if (report == "christoffel" || report == "all") {
    auto G = christoffel(sys, *c);
    auto Q = coordinate_torsion(sys, *c);
    json gj = json::object(), qj = json::object();
    for (Elem g = 0; g < lat.order(); ++g) {
      gj[lat.group().name(g)] = vector_json(G.gamma[g]);
      qj[lat.group().name(g)] = vector_json(Q.gamma[g]);
    }
    j["christoffel"] = {{"layout", "[(mu*n + rho)*n + nu]"}, {"sites", gj}};
    j["torsion"] = {{"layout", "[(mu*n + nu)*n + rho]"}, {"sites", qj}};
    auto R = coordinate_curvature(sys, *c);
    json rj = json::object();
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) rj[std::to_string(r + 1) + "," + std::to_string(s + 1)] = per_site_matrices(lat, R[r * n + s]);
    j["curvature"] = rj;
  }
  if (report == "bianchi" || report == "all") {
    auto b = bianchi_hypercubic(sys, *c, m ? &*m : nullptr);
    j["bianchi"] = {{"first", b.first},         {"second", b.second},
                    {"torsion_free", b.torsion_free}, {"cyclic", b.cyclic},
                    {"metric_given", b.metric_given}, {"isometry", b.isometry},
                    {"reconstruction", b.reconstruction}, {"ok", b.ok(kFloatTol)}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Riemannian geometry on bicovariant group lattices"};
  app.require_subcommand(1);
  Common o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--backend", o.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--threads", o.threads, "worker threads (fallback: CAYLEY_GEOM_THREADS)");
  };

  auto* info = app.add_subcommand("lattice-info", "biangles, triangles and quadrangle chains");
  info->add_option("--lattice", o.lattice)->required();
  add_common(info);

  auto* mcheck = app.add_subcommand("metric-check", "symmetry, invertibility, signature and invariance");
  mcheck->add_option("--lattice", o.lattice);
  mcheck->add_option("--metric", o.metric)->required();
  add_common(mcheck);

  auto* compat = app.add_subcommand("compat-check", "metric compatibility residuals");
  compat->add_option("--lattice", o.lattice)->required();
  compat->add_option("--metric", o.metric)->required();
  compat->add_option("--connection", o.connection)->required();
  add_common(compat);

  auto* tors = app.add_subcommand("torsion", "torsion components by sector");
  tors->add_option("--lattice", o.lattice)->required();
  tors->add_option("--connection", o.connection)->required();
  add_common(tors);

  auto* curv = app.add_subcommand("curvature", "curvature components by sector");
  curv->add_option("--lattice", o.lattice)->required();
  curv->add_option("--connection", o.connection)->required();
  add_common(curv);

  auto* ric = app.add_subcommand("ricci", "curvature, Ricci tensor and curvature scalar");
  ric->add_option("--lattice", o.lattice)->required();
  ric->add_option("--metric", o.metric)->required();
  ric->add_option("--connection", o.connection)->required();
  add_common(ric);

  std::string mask = "all", grid = "none";
  bool site_mode = false;
  SolveConfig cfg;
  auto* solve_cmd = app.add_subcommand("solve-lc", "compatible connections with vanishing masked torsion");
  solve_cmd->add_option("--lattice", o.lattice)->required();
  solve_cmd->add_option("--metric", o.metric)->required();
  solve_cmd->add_option("--mask", mask, "sectors with vanishing torsion, e.g. biangle,triangle");
  solve_cmd->add_flag("--constant", "constant transport matrices (default)");
  solve_cmd->add_flag("--site-dependent", site_mode, "solve site by site");
  solve_cmd->add_option("--grid", grid, "none | default | comma-separated values");
  solve_cmd->add_option("--restarts", cfg.newton_restarts);
  solve_cmd->add_option("--iterations", cfg.newton_iterations);
  solve_cmd->add_option("--seed", cfg.seed);
  solve_cmd->add_option("--max-denominator", cfg.max_denominator);
  add_common(solve_cmd);

  std::string base = "0", format, projection = "0,1";
  int depth = 2, expected_sign = 1;
  auto* dev = app.add_subcommand("develop", "development into the tangent space at a base site");
  dev->add_option("--lattice", o.lattice)->required();
  dev->add_option("--metric", o.metric)->required();
  dev->add_option("--connection", o.connection)->required();
  dev->add_option("--base", base);
  dev->add_option("--depth", depth);
  dev->add_option("--format", format, "svg | json (default: from --out extension)");
  dev->add_option("--projection", projection, "two coordinate indices for SVG");
  dev->add_option("--expected-det-sign", expected_sign, "orientation sign counted as unfolded");
  add_common(dev);

  std::string coord_mode, torus = "5,5", kappa = "1", report = "all";
  auto* coords = app.add_subcommand("coords", "coordinate systems: z4-demo | hypercubic");
  coords->add_option("mode", coord_mode)->required()->check(CLI::IsMember({"z4-demo", "hypercubic"}));
  coords->add_option("--torus", torus);
  coords->add_option("--kappa", kappa);
  coords->add_option("--connection", o.connection);
  coords->add_option("--metric", o.metric);
  coords->add_option("--report", report)->check(CLI::IsMember({"bianchi", "christoffel", "all"}));
  add_common(coords);

  auto* cof = app.add_subcommand("coframe", "orthonormal coframe and frame connection");
  cof->add_option("--lattice", o.lattice)->required();
  cof->add_option("--metric", o.metric)->required();
  cof->add_option("--connection", o.connection);
  add_common(cof);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"code", errc::kUsage}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  try {
    const bool exact = exact_backend(o);
    if (info->parsed()) {
      emit_json(o, lattice_info_json(load_lattice(o)));
    } else if (mcheck->parsed()) {
      if (o.lattice.empty()) {
        emit_json(o, metric_check_standalone(read_json_file(o.metric)));
      } else {
        Lattice lat = load_lattice(o);
        emit_json(o, exact ? metric_check(lat, load_metric<Rational>(o, lat)) : metric_check(lat, load_metric<double>(o, lat)));
      }
    } else if (compat->parsed()) {
      Lattice lat = load_lattice(o);
      emit_json(o, exact ? compat_check(lat, load_metric<Rational>(o, lat), load_connection<Rational>(o, lat))
                         : compat_check(lat, load_metric<double>(o, lat), load_connection<double>(o, lat)));
    } else if (tors->parsed()) {
      Lattice lat = load_lattice(o);
      emit_json(o, exact ? torsion_json(lat, torsion(lat, load_connection<Rational>(o, lat)))
                         : torsion_json(lat, torsion(lat, load_connection<double>(o, lat))));
    } else if (curv->parsed()) {
      Lattice lat = load_lattice(o);
      emit_json(o, exact ? curvature_json(lat, curvature(lat, load_connection<Rational>(o, lat)))
                         : curvature_json(lat, curvature(lat, load_connection<double>(o, lat))));
    } else if (ric->parsed()) {
      Lattice lat = load_lattice(o);
      emit_json(o, exact ? ricci_json(lat, load_metric<Rational>(o, lat), load_connection<Rational>(o, lat))
                         : ricci_json(lat, load_metric<double>(o, lat), load_connection<double>(o, lat)));
    } else if (solve_cmd->parsed()) {
      Lattice lat = load_lattice(o);
      auto m = load_metric<Rational>(o, lat);
      cfg.constant_connection = !site_mode;
      cfg.threads = resolve_threads(o.threads);
      if (grid == "default") {
        cfg.grid = default_grid();
      } else if (grid != "none") {
        std::vector<Rational> vals;
        std::stringstream ss(grid);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(Rational::parse(tok));
        cfg.grid = vals;
      }
      emit_json(o, solve_report_json(lat, solve(lat, m, TorsionMask::parse(mask), cfg)));
    } else if (dev->parsed()) {
      Lattice lat = load_lattice(o);
      Elem b = parse_site(lat, base);
      Development d;
      FoldingReport fold;
      if (exact) {
        auto c = load_connection<Rational>(o, lat);
        d = develop(lat, load_metric<Rational>(o, lat), c, b, depth);
        fold = folding_report(lat, c, expected_sign);
      } else {
        auto c = load_connection<double>(o, lat);
        d = develop(lat, load_metric<double>(o, lat), c, b, depth);
        fold = folding_report(lat, c, expected_sign);
      }
      if (format.empty()) format = o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".svg" ? "svg" : "json";
      if (format == "svg") {
        auto p = parse_int_list(projection);
        if (p.size() != 2) throw Error(errc::kUsage, "projection needs two indices");
        emit(o, render_svg(d, {p[0], p[1]}));
      } else if (format == "json") {
        json j = development_json(d);
        json folded = json::object();
        for (int a = 0; a < lat.n(); ++a) folded[lat.arrow_name(a)] = static_cast<bool>(fold.folded[a]);
        j["folding"] = {{"expected_sign", fold.expected_sign}, {"folded", folded}, {"dyad", fold.dyad}, {"dyad_ok", fold.dyad_ok}};
        emit_json(o, j);
      } else {
        throw Error(errc::kUsage, "unknown format '" + format + "'");
      }
    } else if (coords->parsed()) {
      if (coord_mode == "z4-demo") {
        auto s = z4_coordinates();
        json j = checks_json(z4_coordinate_checks(s));
        json comm = checks_json(z4_commutation_check(s));
        j["commutation"] = comm["checks"];
        j["ok"] = j["ok"].get<bool>() && comm["ok"].get<bool>();
        j["x"] = scalar_field_json(s.lat, s.x)["values"];
        j["y"] = scalar_field_json(s.lat, s.y)["values"];
        json jac = json::object();
        for (Elem g = 0; g < 4; ++g) jac[s.lat.group().name(g)] = matrix_json(s.jacobian[g]);
        j["jacobian"] = jac;
        emit_json(o, j);
      } else {
        Group grp = Group::torus(parse_int_list(torus));
        std::vector<Elem> units;
        for (std::size_t mu = 0; mu < grp.moduli().size(); ++mu) {
          std::vector<int> c(grp.moduli().size(), 0);
          c[mu] = 1;
          units.push_back(grp.from_coords(c));
        }
        Lattice hl(grp, units);
        if (exact) {
          std::optional<Connection<Rational>> c;
          std::optional<MetricField<Rational>> m;
          if (!o.connection.empty()) c = load_connection<Rational>(o, hl);
          if (!o.metric.empty()) m = load_metric<Rational>(o, hl);
          emit_json(o, hypercubic_report(hl, Rational::parse(kappa), c, m, report));
        } else {
          std::optional<Connection<double>> c;
          std::optional<MetricField<double>> m;
          if (!o.connection.empty()) c = load_connection<double>(o, hl);
          if (!o.metric.empty()) m = load_metric<double>(o, hl);
          emit_json(o, hypercubic_report(hl, Rational::parse(kappa).to_double(), c, m, report));
        }
      }
    } else if (cof->parsed()) {
      Lattice lat = load_lattice(o);
      if (exact) {
        std::optional<Connection<Rational>> c;
        if (!o.connection.empty()) c = load_connection<Rational>(o, lat);
        emit_json(o, coframe_report(lat, load_metric<Rational>(o, lat), c));
      } else {
        std::optional<Connection<double>> c;
        if (!o.connection.empty()) c = load_connection<double>(o, lat);
        emit_json(o, coframe_report(lat, load_metric<double>(o, lat), c));
      }
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", "E_INTERNAL"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  return 0;
}
