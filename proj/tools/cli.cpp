#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "upsharp/constants.hpp"
#include "upsharp/errors.hpp"
#include "upsharp/extremals.hpp"
#include "upsharp/harmonic_field.hpp"
#include "upsharp/minimize.hpp"
#include "upsharp/parallel.hpp"
#include "upsharp/seminorms.hpp"
#include "upsharp/serialize.hpp"

namespace upsharp::cli {

namespace {

/// Flat JSON object -> CLI11 items; the "quadrature" block maps onto the --quad-* flags.
class JsonConfig : public CLI::Config {
public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (key == "quadrature" && value.is_object()) {
        for (const auto& [qk, qv] : value.items()) items.push_back(item("quad-" + qk, qv));
      } else {
        items.push_back(item(key, value));
      }
    }
    return items;
  }

private:
  static std::string text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static CLI::ConfigItem item(const std::string& key, const Json& value) {
    CLI::ConfigItem it;
    it.name = key;
    std::replace(it.name.begin(), it.name.end(), '_', '-');
    if (value.is_array()) {
      // lists are joined so "n": [2, 3] reads like --n 2,3
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + text(v);
      it.inputs = {joined};
    } else {
      it.inputs = {text(value)};
    }
    return it;
  }
};

struct Settings {
  std::string n, k = "0", beta = "1", ladder = "128,256,512", family = "gaussian", spacing = "uniform";
  std::string eval = "closed_form", format = "json", out, csv;
  int m = 512, k_max = -1, restarts = 5, max_iter = 4000, mode_k = 0;
  double r_min = 1e-3, r_max = 0.0, alpha = 1.0, power = 0.0, band = 0.02;
  std::uint64_t seed = 0;
  std::string quad_rule = "gauss_legendre_panels";
  int quad_panels = 64, quad_points = 16;
  double quad_rel_tol = 1e-12, quad_abs_tol = 1e-14;

  QuadratureConfig quadrature() const {
    QuadratureConfig c;
    c.rule = quad_rule_from_string(quad_rule);
    c.panels = quad_panels;
    c.points_per_panel = quad_points;
    c.rel_tol = quad_rel_tol;
    c.abs_tol = quad_abs_tol;
    c.validate();
    return c;
  }

  Json to_json() const {
    return Json{{"n", n},         {"k", k},           {"beta", beta},       {"m", m},
                {"r-min", r_min}, {"r-max", r_max},   {"k-max", k_max},     {"ladder", ladder},
                {"family", family}, {"alpha", alpha}, {"power", power},     {"mode-k", mode_k},
                {"eval", eval},   {"spacing", spacing}, {"restarts", restarts}, {"max-iter", max_iter},
                {"band", band},   {"quad-rule", quad_rule}, {"quad-panels", quad_panels},
                {"quad-points", quad_points}, {"quad-rel-tol", quad_rel_tol}, {"quad-abs-tol", quad_abs_tol}};
  }
};

/// A report plus the CSV rendering that --format csv or --csv selects.
struct Output {
  Json report;
  std::string csv;
  int code = ok;
};

void emit(const Output& o, const Settings& s, std::ostream& out) {
  const std::string body = s.format == "csv" ? o.csv : o.report.dump(2) + "\n";
  if (s.out.empty()) {
    out << body;
  } else {
    std::ofstream f(s.out);
    if (!f) throw domain_error("cannot write '" + s.out + "'");
    f << body;
  }
  if (!s.csv.empty()) {
    std::ofstream f(s.csv);
    if (!f) throw domain_error("cannot write '" + s.csv + "'");
    f << o.csv;
  }
}

int single(const std::string& text, const char* what) {
  const auto v = parse_int_list(text);
  if (v.size() != 1) throw domain_error(std::string(what) + " takes a single integer here");
  return v[0];
}

int default_low(PrincipleId p) {
  return (p == PrincipleId::hup || p == PrincipleId::hup2 || p == PrincipleId::hup2_radial) ? 1 : 2;
}

Output cmd_verify(const std::string& target, const Settings& s, Json& params, std::ostream& err) {
  const PrincipleId p = principle_from_string(target);
  const EvalMode mode = eval_mode_from_string(s.eval);
  const auto dims = parse_int_list(s.n.empty() ? std::to_string(default_low(p)) + "..10" : s.n);
  const auto betas = parse_double_list(s.beta);
  const QuadratureConfig qc = s.quadrature();
  const double tol = mode == EvalMode::closed_form ? 1e-9 : 1e-6;
  params["principle"] = target;
  Output o;
  Json reports = Json::array();
  std::string csv = quotient_csv_header();
  bool pass = true;
  for (int N : dims) sharp_constant(p, N);  // range errors before any work
  for (int N : dims) {
    for (double beta : betas) {
      const auto r = extremal_quotient(p, N, beta, mode, qc, s.alpha);
      reports.push_back(to_json(r));
      csv += quotient_csv_row(r);
      if (!(r.rel_gap < tol) && pass) {
        pass = false;
        err << "verification failed:\n" << to_json(r).dump(2) << "\n";
      }
    }
  }
  o.report = Json{{"reports", reports}, {"tolerance", tol}, {"status", pass ? "pass" : "fail"}};
  o.csv = csv;
  o.code = pass ? ok : verification_failed;
  return o;
}

Output cmd_scan(const std::string& target, const Settings& s, Json& params) {
  const ScanFormula f = scan_formula_from_string(target);
  const auto dims = parse_int_list(s.n.empty() ? "2..20" : s.n);
  const int k_max = s.k_max < 0 ? 64 : s.k_max;
  params["formula"] = target;
  Output o;
  Json results = Json::array();
  bool pass = true;
  bool first = true;
  for (int N : dims) {
    const auto r = scan_infimum(f, N, k_max);
    results.push_back(to_json(r));
    o.csv += scan_csv(r, first);
    first = false;
    if (r.within_lemma_range && !(r.infimum == r.predicted && r.argmin == 0)) pass = false;
  }
  o.report = Json{{"results", results}, {"status", pass ? "pass" : "fail"}};
  o.code = pass ? ok : verification_failed;
  return o;
}

GridConfig grid_of(const Settings& s) {
  GridConfig g;
  g.r_min = s.r_min;
  g.r_max = s.r_max;
  g.M = s.m;
  g.spacing = spacing_from_string(s.spacing);
  return g;
}

MinimizeOptions minimize_options(const Settings& s) {
  MinimizeOptions o;
  o.seed = s.seed;
  o.restarts = s.restarts;
  o.max_iterations = s.max_iter;
  o.workers = workers_from_env();
  return o;
}

Output cmd_minimize(const std::string& target, const Settings& s, Json& params) {
  const QuotientKind q = quotient_from_string(target);
  const int N = single(s.n.empty() ? "2" : s.n, "--n");
  const int k = single(s.k, "--k");
  params["quotient"] = target;
  const auto problem = make_problem(q, Mode(N, k), grid_of(s));
  const auto r = minimize_quotient(problem, minimize_options(s));
  Output o;
  o.report = to_json(r);
  o.csv = history_csv(r);
  bool within = true;
  if (r.target) within = std::abs(r.min_value - *r.target) <= s.band * *r.target;
  o.report["band"] = s.band;
  o.report["within_band"] = r.target ? Json(within) : Json(nullptr);
  o.code = !r.converged ? computational : (within ? ok : verification_failed);
  return o;
}

Output cmd_conjecture(const Settings& s, Json& params) {
  const int N = single(s.n.empty() ? "3" : s.n, "--n");
  if (N < 2 || N > 5) throw domain_error("conjecture runs take N in 2..5 (5 is the calibration case)");
  const int k_max = s.k_max < 0 ? 4 : s.k_max;
  const auto ladder = parse_int_list(s.ladder);
  params["k-max"] = k_max;
  const auto r = explore_conjecture(N, k_max, ladder, grid_of(s), minimize_options(s));
  Output o;
  o.report = to_json(r);
  o.csv = conjecture_csv(r);
  return o;
}

AnalyticProfile profile_of(const Settings& s) {
  switch (family_from_string(s.family)) {
    case Family::gaussian: return AnalyticProfile::gaussian(s.alpha, parse_double_list(s.beta).at(0));
    case Family::exponential: return AnalyticProfile::exponential(s.alpha, parse_double_list(s.beta).at(0));
    case Family::hydrogen_second:
      return AnalyticProfile::hydrogen_second(s.alpha, parse_double_list(s.beta).at(0));
    case Family::monomial_cutoff:
      return AnalyticProfile::monomial_cutoff(s.alpha, parse_double_list(s.beta).at(0), s.power);
    case Family::exp_polynomial: break;
  }
  throw domain_error("decompose-check takes gaussian, exponential, hydrogen_second or monomial_cutoff");
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

Output cmd_decompose(const Settings& s, Json& params) {
  const int N = single(s.n.empty() ? "2" : s.n, "--n");
  if (N != 2 && N != 3) throw domain_error("decompose-check takes N = 2 or 3");
  const int k = s.mode_k;
  const Mode mode(N, k);
  const AnalyticProfile v = profile_of(s);
  const AnalyticProfile u = v.times_power(k);
  const QuadratureConfig qc = s.quadrature();
  params["profile"] = to_json(v);
  Output o;
  o.csv = "check,lhs,rhs,rel_err,skipped\n";
  Json rows = Json::array();
  bool pass = true;
  int evaluated = 0;
  auto add = [&](const std::string& name, double lhs, double rhs) {
    const double e = relative(lhs, rhs);
    pass = pass && e < 1e-6;
    ++evaluated;
    rows.push_back({{"check", name}, {"lhs", lhs}, {"rhs", rhs}, {"rel_err", e}});
    std::ostringstream line;
    line.precision(17);
    line << name << "," << lhs << "," << rhs << "," << e << ",\n";
    o.csv += line.str();
  };
  // inadmissible or divergent for this mode: reported, not compared
  auto skip = [&](const std::string& name, const std::string& why) {
    rows.push_back({{"check", name}, {"skipped", why}});
    o.csv += name + ",,,," + why + "\n";
  };
  auto guarded = [&](const std::string& name, const std::function<std::pair<double, double>()>& f) {
    try {
      const auto [lhs, rhs] = f();
      add(name, lhs, rhs);
    } catch (const singular_weight& e) {
      skip(name, e.what());
    } catch (const divergent_integral& e) {
      skip(name, e.what());
    }
  };
  for (FunctionalId id : all_functionals()) {
    if (!has_form(id, Form::v_form)) continue;
    guarded(to_string(id) + " u_form vs v_form", [&] {
      return std::pair{eval_mode_functional(id, mode, u, Form::u_form, qc).value,
                       eval_mode_functional(id, mode, v, Form::v_form, qc).value};
    });
  }
  if (N == 2)
    guarded("int |grad U|^2 vs int |Delta u|^2", [&] { return vector_equiv_check_2d(PlanarField({{k, u}}), qc); });
  if (evaluated == 0) pass = false;
  o.report = Json{{"N", N}, {"k", k}, {"rows", rows}, {"tolerance", 1e-6}, {"status", pass ? "pass" : "fail"}};
  o.code = pass ? ok : verification_failed;
  return o;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::logic_error&) {
      throw domain_error("'" + text + "' is not an integer list");
    }
    if (used != t.size()) throw domain_error("'" + text + "' is not an integer list");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
    } else {
      const int lo = to_int(part.substr(0, dots)), hi = to_int(part.substr(dots + 2));
      if (hi < lo) throw domain_error("empty range '" + part + "'");
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
  }
  if (out.empty()) throw domain_error("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::logic_error&) {
      throw domain_error("'" + text + "' is not a number list");
    }
    if (used != part.size()) throw domain_error("'" + text + "' is not a number list");
    out.push_back(v);
  }
  if (out.empty()) throw domain_error("empty number list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp second-order uncertainty-principle constants: verification, scans, minimization"};
  app.name("upsharp");
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file supplying any flag (flags override it)");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--n", s.n, "dimension, range \"1..10\" or list \"2,3,5\"");
  app.add_option("--k", s.k, "mode degree (minimize)");
  app.add_option("--beta", s.beta, "rate(s), comma separated");
  app.add_option("--alpha", s.alpha, "amplitude");
  app.add_option("--m", s.m, "grid intervals")->check(CLI::PositiveNumber);
  app.add_option("--r-min", s.r_min, "grid start");
  app.add_option("--r-max", s.r_max, "grid end (0: quotient default)");
  app.add_option("--spacing", s.spacing, "uniform or geometric");
  app.add_option("--seed", s.seed, "random seed");
  app.add_option("--restarts", s.restarts, "random restarts");
  app.add_option("--max-iter", s.max_iter, "iteration budget per restart");
  app.add_option("--band", s.band, "relative tolerance band around the target (minimize)");
  app.add_option("--k-max", s.k_max, "largest mode degree (scan: 64, conjecture: 4)");
  app.add_option("--ladder", s.ladder, "grid sizes of the resolution ladder");
  app.add_option("--family", s.family, "profile family (decompose-check)");
  app.add_option("--power", s.power, "monomial power m of monomial_cutoff");
  app.add_option("--mode-k", s.mode_k, "mode degree (decompose-check)")->check(CLI::NonNegativeNumber);
  app.add_option("--eval", s.eval, "closed_form or quadrature (verify)");
  app.add_option("--quad-rule", s.quad_rule, "closed_form_gamma, gauss_legendre_panels or adaptive");
  app.add_option("--quad-panels", s.quad_panels, "quadrature panels");
  app.add_option("--quad-points", s.quad_points, "Gauss points per panel");
  app.add_option("--quad-rel-tol", s.quad_rel_tol, "relative tolerance");
  app.add_option("--quad-abs-tol", s.quad_abs_tol, "absolute tolerance");
  app.add_option("--out", s.out, "write the report here instead of stdout");
  app.add_option("--csv", s.csv, "also write the CSV rendering here");
  app.add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string target;
  auto* verify = app.add_subcommand("verify", "closed-form or quadrature extremal quotients");
  verify->add_option("principle", target, "hup, hyup, hup2, hyup2, hup2_radial, hyup2_radial")->required();
  auto* scan = app.add_subcommand("scan", "exact rational scans of the per-mode combination formulas");
  scan->add_option("formula", target, "lemma33_S or lemma34_f")->required();
  auto* minimize = app.add_subcommand("minimize", "minimize a per-mode quotient on a grid");
  minimize->add_option("quotient", target, "product_hup2, product_hyup2, classic_hup, classic_hyup, hardy_1d, full_hyup2")
      ->required();
  auto* conjecture = app.add_subcommand("conjecture", "numerical evidence on the hyup2 constant for N < 5");
  auto* decompose = app.add_subcommand("decompose-check", "mode-decomposition and vector-field identities");
  for (auto* sub : {verify, scan, minimize, conjecture, decompose}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  Json params = s.to_json();
  std::string command;
  try {
    Output o;
    if (verify->parsed()) {
      command = "verify";
      o = cmd_verify(target, s, params, err);
    } else if (scan->parsed()) {
      command = "scan";
      o = cmd_scan(target, s, params);
    } else if (minimize->parsed()) {
      command = "minimize";
      o = cmd_minimize(target, s, params);
    } else if (conjecture->parsed()) {
      command = "conjecture";
      o = cmd_conjecture(s, params);
    } else {
      command = "decompose-check";
      o = cmd_decompose(s, params);
    }
    Json report{{"manifest", to_json(make_manifest(command, params, s.seed))}};
    for (auto& [key, value] : o.report.items()) report[key] = value;
    o.report = std::move(report);
    emit(o, s, out);
    return o.code;
  } catch (const domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return computational;
  }
}

}  // namespace upsharp::cli
