#include "upsharp/serialize.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <Eigen/Core>

#include "upsharp/errors.hpp"

namespace upsharp {

namespace {

Json vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from(const Json& a) {
  if (!a.is_array()) throw domain_error("expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return v;
}

// Fixed-width rendering keeps CSV output independent of stream state.
std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& q) {
  return Json{{"num", to_string(q.num())}, {"den", to_string(q.den())}, {"float", q.to_double()}};
}

Json to_json(const AnalyticProfile& p) {
  Json params;
  switch (p.family()) {
    case Family::gaussian:
    case Family::exponential:
    case Family::hydrogen_second:
      params = {{"alpha", p.amplitude()}, {"beta", p.rate()}};
      break;
    case Family::monomial_cutoff:
      params = {{"alpha", p.amplitude()}, {"beta", p.rate()}, {"m", p.power()}};
      break;
    case Family::exp_polynomial: {
      const auto& e = p.expansion();
      Json terms = Json::array();
      for (const auto& t : e.terms()) terms.push_back({{"c", t.coefficient}, {"p", t.power}});
      params = {{"shape", e.shape()}, {"rate", e.rate()}, {"terms", terms}};
      break;
    }
  }
  return Json{{"family", to_string(p.family())}, {"params", params}};
}

Json to_json(const SampledProfile& p) {
  return Json{{"grid", vec(p.grid())}, {"values", vec(p.values())}, {"scheme", to_string(p.scheme())}};
}

Json to_json(const Profile& p) {
  return std::visit([](const auto& q) { return to_json(q); }, p);
}

Profile profile_from_json(const Json& j) {
  try {
    if (j.contains("grid")) {
      const DiffScheme s = scheme_from_string(j.value("scheme", std::string("cd4")));
      return SampledProfile(vec_from(j.at("grid")), vec_from(j.at("values")), s);
    }
    const Family f = family_from_string(j.at("family").get<std::string>());
    const Json& p = j.at("params");
    const double alpha = p.value("alpha", 1.0);
    switch (f) {
      case Family::gaussian: return AnalyticProfile::gaussian(alpha, p.at("beta").get<double>());
      case Family::exponential: return AnalyticProfile::exponential(alpha, p.at("beta").get<double>());
      case Family::hydrogen_second: return AnalyticProfile::hydrogen_second(alpha, p.at("beta").get<double>());
      case Family::monomial_cutoff:
        return AnalyticProfile::monomial_cutoff(alpha, p.at("beta").get<double>(), p.at("m").get<double>());
      case Family::exp_polynomial: {
        std::vector<ExpTerm> terms;
        for (const auto& t : p.at("terms")) terms.push_back({t.at("c").get<double>(), t.at("p").get<double>()});
        return AnalyticProfile(ExpPolynomial(p.at("shape").get<int>(), p.at("rate").get<double>(), terms));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("malformed profile: ") + e.what());
  }
  throw domain_error("malformed profile");
}

Json to_json(const ModeFunctionalValue& v) {
  Json terms = Json::object();
  for (const auto& t : v.terms) terms[t.label] = t.value();
  return Json{{"mode", {{"N", v.mode.dimension()}, {"k", v.mode.degree()}}},
              {"id", to_string(v.id)},
              {"form", to_string(v.form)},
              {"terms", terms},
              {"value", v.value}};
}

Json to_json(const ScanResult& s) {
  Json values = Json::array();
  for (const auto& q : s.values) values.push_back(to_json(q));
  Json j{{"formula", to_string(s.formula)},
         {"N", s.dimension},
         {"k_max", s.k_max},
         {"argmin", s.argmin},
         {"infimum", to_json(s.infimum)},
         {"predicted", to_json(s.predicted)},
         {"matches_prediction", s.infimum == s.predicted},
         {"within_lemma_range", s.within_lemma_range},
         {"tail_certified", s.tail_certified},
         {"certificate", s.certificate}};
  if (s.formula == ScanFormula::lemma34_f) {
    j["monotone_from_k1"] = s.monotone_from_k1;
    j["first_decrease"] = s.first_decrease;
  }
  if (!s.within_lemma_range) j["annotation"] = "outside lemma range";
  j["values"] = values;
  return j;
}

Json to_json(const QuotientReport& r) {
  Json num_terms = Json::object();
  for (const auto& [label, v] : r.numerator_terms) num_terms[label] = v;
  Json j{{"principle", to_string(r.principle)},
         {"N", r.dimension},
         {"family", to_string(r.family)},
         {"beta", r.rate},
         {"mode", to_string(r.mode)},
         {"numerator_terms", num_terms},
         {"denominator", {{r.denominator.first, r.denominator.second}}},
         {"quotient", r.quotient},
         {"predicted", r.predicted},
         {"rel_gap", r.rel_gap},
         {"sphere_measure", r.sphere_measure},
         {"conjectural", r.conjectural}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const GridConfig& g) {
  return Json{{"r_min", g.r_min}, {"r_max", g.r_max}, {"M", g.M}, {"spacing", to_string(g.spacing)}};
}

Json to_json(const VariationalProblem& p) {
  return Json{{"quotient", to_string(p.quotient)},
              {"mode", {{"N", p.mode.dimension()}, {"k", p.mode.degree()}}},
              {"grid", to_json(p.grid)}};
}

Json to_json(const MinimizationResult& r, bool with_profile) {
  Json j{{"problem", to_json(r.problem)},
         {"min_value", r.min_value},
         {"target", optional_number(r.target)},
         {"rel_gap", r.target ? Json(std::abs(r.min_value - *r.target) / *r.target) : Json(nullptr)},
         {"initial_value", r.initial_value},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"best_restart", r.best_restart},
         {"history", r.history}};
  if (with_profile) j["argmin"] = to_json(r.argmin);
  return j;
}

Json to_json(const CombinedBound& b) {
  Json rows = Json::array();
  for (const auto& r : b.rows) {
    Json row{{"k", r.k},
             {"per_mode_min", r.per_mode_min},
             {"per_mode_exact", r.per_mode_exact},
             {"factor", r.factor},
             {"corrected", r.corrected},
             {"exact", to_json(r.exact)},
             {"complete", r.complete}};
    if (!r.failure.empty()) row["failure"] = r.failure;
    rows.push_back(row);
  }
  return Json{{"quotient", to_string(b.quotient)},
              {"N", b.dimension},
              {"k_max", b.k_max},
              {"grid", to_json(b.grid)},
              {"combined", b.combined},
              {"argmin_k", b.argmin_k},
              {"exact_infimum", to_json(b.exact_infimum)},
              {"rel_gap", std::abs(b.combined - b.exact_infimum.to_double()) / b.exact_infimum.to_double()},
              {"scan", {{"infimum", to_json(b.scan.infimum)}, {"argmin", b.scan.argmin}}},
              {"rows", rows}};
}

Json to_json(const ConjectureReport& r) {
  Json rows = Json::array();
  for (const auto& w : r.rows)
    rows.push_back({{"k", w.k}, {"M", w.M}, {"relaxed", w.relaxed}, {"full", w.full}, {"converged", w.converged}});
  Json j{{"N", r.dimension},
         {"k_max", r.k_max},
         {"ladder", r.ladder},
         {"estimate", r.estimate},
         {"estimate_k", r.estimate_k},
         {"relaxed_bound", r.relaxed_bound},
         {"conjectured", r.conjectured},
         {"delta_disc", r.delta_disc},
         {"counterexample_candidate", r.counterexample_candidate},
         {"statement", "numerical evidence only; no proof in either direction"},
         {"rows", rows}};
  if (r.candidate) j["candidate"] = {{"k", r.candidate_k}, {"w", to_json(*r.candidate)}};
  return j;
}

std::string quotient_csv_header() { return "principle,N,beta,quotient,predicted,rel_gap\n"; }

std::string quotient_csv_row(const QuotientReport& r) {
  return to_string(r.principle) + "," + std::to_string(r.dimension) + "," + num(r.rate) + "," + num(r.quotient) +
         "," + num(r.predicted) + "," + num(r.rel_gap) + "\n";
}

std::string scan_csv(const ScanResult& s, bool header) {
  std::string out = header ? "N,k,num,den,value\n" : "";
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const auto& q = s.values[k];
    out += std::to_string(s.dimension) + "," + std::to_string(k) + "," + to_string(q.num()) + "," +
           to_string(q.den()) + "," + num(q.to_double()) + "\n";
  }
  return out;
}

std::string history_csv(const MinimizationResult& r) {
  std::string out = "iteration,quotient\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) out += std::to_string(i) + "," + num(r.history[i]) + "\n";
  return out;
}

std::string conjecture_csv(const ConjectureReport& r) {
  std::string out = "k,resolution,min_value,relaxed,conjectured,converged\n";
  for (const auto& w : r.rows)
    out += std::to_string(w.k) + "," + std::to_string(w.M) + "," + num(w.full) + "," + num(w.relaxed) + "," +
           num(r.conjectured) + "," + (w.converged ? "1" : "0") + "\n";
  return out;
}

std::string version_string() {
  std::ostringstream s;
  s << "upsharp " << kVersion << "; eigen " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
    << EIGEN_MINOR_VERSION << "; " << __VERSION__;
  return s.str();
}

std::string iso_timestamp() {
  std::time_t t;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"); e && *e) {
    try {
      t = static_cast<std::time_t>(std::stoll(e));
    } catch (const std::logic_error&) {
      throw domain_error("SOURCE_DATE_EPOCH must be an integer");
    }
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

RunManifest make_manifest(std::string command, Json parameters, std::uint64_t seed) {
  return RunManifest{std::move(command), std::move(parameters), seed, version_string(), iso_timestamp()};
}

Json to_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"parameters", m.parameters},
              {"seed", m.seed},
              {"versions", m.versions},
              {"timestamp", m.timestamp}};
}

}  // namespace upsharp
