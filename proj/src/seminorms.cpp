#include "upsharp/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "upsharp/errors.hpp"
#include "upsharp/gauss_legendre.hpp"

namespace upsharp {

std::string to_string(FunctionalId id) {
  switch (id) {
    case FunctionalId::grad_energy: return "grad_energy";
    case FunctionalId::weighted_grad_energy: return "weighted_grad_energy";
    case FunctionalId::coulomb_grad_energy: return "coulomb_grad_energy";
    case FunctionalId::laplacian_energy: return "laplacian_energy";
    case FunctionalId::r1_energy: return "r1_energy";
    case FunctionalId::r1_weighted_energy: return "r1_weighted_energy";
    case FunctionalId::r1_coulomb_energy: return "r1_coulomb_energy";
    case FunctionalId::r2_energy: return "r2_energy";
    case FunctionalId::l2_norm: return "l2_norm";
  }
  return "?";
}

const std::vector<FunctionalId>& all_functionals() {
  static const std::vector<FunctionalId> ids = {
      FunctionalId::grad_energy,   FunctionalId::weighted_grad_energy, FunctionalId::coulomb_grad_energy,
      FunctionalId::laplacian_energy, FunctionalId::r1_energy,         FunctionalId::r1_weighted_energy,
      FunctionalId::r1_coulomb_energy, FunctionalId::r2_energy,        FunctionalId::l2_norm};
  return ids;
}

FunctionalId functional_from_string(const std::string& name) {
  for (auto id : all_functionals())
    if (to_string(id) == name) return id;
  throw domain_error("unknown functional '" + name + "'");
}

std::string to_string(Form f) { return f == Form::u_form ? "u_form" : "v_form"; }

bool has_form(FunctionalId id, Form form) { return !(id == FunctionalId::r2_energy && form == Form::v_form); }

std::vector<TermSpec> functional_terms(FunctionalId id, const Mode& mode, Form form) {
  if (!has_form(id, form))
    throw form_unavailable(to_string(id) + " has no " + to_string(form) + " expression");
  const int N = mode.dimension();
  const int k = mode.degree();
  const int a = mode.shifted_dimension();
  const double c = static_cast<double>(mode.eigenvalue());
  std::vector<TermSpec> t;
  const bool u = form == Form::u_form;
  switch (id) {
    case FunctionalId::grad_energy:
      if (u) t = {{1.0, 1, N - 1}, {c, 0, N - 3}};
      else t = {{1.0, 1, a - 1}};
      break;
    case FunctionalId::weighted_grad_energy:
      if (u) t = {{1.0, 1, N + 1}, {c, 0, N - 1}};
      else t = {{1.0, 1, a + 1}, {-2.0 * k, 0, a - 1}};
      break;
    case FunctionalId::coulomb_grad_energy:
      if (u) t = {{1.0, 1, N - 2}, {c, 0, N - 4}};
      else t = {{1.0, 1, a - 2}, {static_cast<double>(k), 0, a - 4}};
      break;
    case FunctionalId::laplacian_energy:
      if (u) t = {{1.0, 2, N - 1}, {N - 1 + 2.0 * c, 1, N - 3}, {c * c + 2.0 * c * (N - 4), 0, N - 5}};
      else t = {{1.0, 2, a - 1}, {a - 1.0, 1, a - 3}};
      break;
    case FunctionalId::r1_energy:
      if (u) t = {{1.0, 1, N - 1}};
      else t = {{1.0, 1, a - 1}, {-c, 0, a - 3}};
      break;
    case FunctionalId::r1_weighted_energy:
      if (u) t = {{1.0, 1, N + 1}};
      else t = {{1.0, 1, a + 1}, {-(c + 2.0 * k), 0, a - 1}};
      break;
    case FunctionalId::r1_coulomb_energy:
      if (u) t = {{1.0, 1, N - 2}};
      else t = {{1.0, 1, a - 2}, {-(c - k), 0, a - 4}};
      break;
    case FunctionalId::r2_energy:
      // At N = 2 this is exactly int r|u''|^2 + int r^{-1}|u'|^2.
      t = {{1.0, 2, N - 1}, {N - 1.0, 1, N - 3}};
      break;
    case FunctionalId::l2_norm:
      if (u) t = {{1.0, 0, N - 1}};
      else t = {{1.0, 0, a - 1}};
      break;
  }
  std::erase_if(t, [](const TermSpec& s) { return s.coefficient == 0.0; });
  return t;
}

std::string term_label(const TermSpec& t, Form form) {
  std::ostringstream os;
  if (t.coefficient != 1.0) os << t.coefficient << "*";
  os << "int r^" << t.power << " |" << (form == Form::u_form ? 'u' : 'v') << std::string(t.deriv, '\'') << "|^2";
  return os.str();
}

double estimated_vanishing_order(const SampledProfile& f) {
  const double f0 = std::abs(f.values()[0]), f1 = std::abs(f.values()[1]);
  const double scale = f.values().cwiseAbs().maxCoeff();
  if (scale == 0.0 || f0 <= 1e-300 * scale) return std::numeric_limits<double>::infinity();
  if (f1 == 0.0) return 0.0;
  return std::log(f1 / f0) / std::log(f.grid()[1] / f.grid()[0]);
}

namespace {

void check_admissible(FunctionalId id, const Mode& mode, const Profile& profile, Form form) {
  const int k = mode.degree();
  if (const auto* sp = std::get_if<SampledProfile>(&profile)) {
    if (form == Form::u_form && k >= 1 && estimated_vanishing_order(*sp) < k - 0.25)
      throw singular_weight("u_k does not vanish to order " + std::to_string(k) + " at the grid start");
    const bool needs_origin = id == FunctionalId::laplacian_energy || id == FunctionalId::r2_energy;
    if (mode.dimension() == 2 && k <= 1 && needs_origin) {
      const SampledProfile v = form == Form::u_form ? substitute_vk(mode, *sp) : *sp;
      // A vanishing value or slope is only resolved down to the first spacing.
      const double r1 = v.grid()[1];
      if (k == 0 &&
          std::abs(v.nodal(1)[0]) > 10.0 * r1 * std::max(v.nodal(2).cwiseAbs().maxCoeff(), 1e-300))
        throw singular_weight("dimension 2, k = 0 needs v'(0) = 0");
      if (k == 1 &&
          std::abs(v.nodal(0)[0]) > 10.0 * r1 * std::max(v.nodal(1).cwiseAbs().maxCoeff(), 1e-300))
        throw singular_weight("dimension 2, k = 1 needs v(0) = 0");
    }
  } else if (form == Form::u_form && k >= 1) {
    const auto& e = std::get<AnalyticProfile>(profile).expansion();
    if (!e.is_zero() && e.leading_power() < k)
      throw singular_weight("u_k does not vanish to order " + std::to_string(k) + " at the origin");
  }
}

}  // namespace

ModeFunctionalValue eval_mode_functional(FunctionalId id, const Mode& mode, const Profile& profile,
                                         Form form, const QuadratureConfig& cfg) {
  auto specs = functional_terms(id, mode, form);
  check_admissible(id, mode, profile, form);
  ModeFunctionalValue out{mode, id, form, {}, 0.0};
  CompensatedSum<long double> acc;
  for (const auto& s : specs) {
    const double integral = integrate(profile, WeightedSeminorm(s.deriv, s.power), cfg);
    out.terms.push_back({term_label(s, form), s, integral});
    acc.add(static_cast<long double>(s.coefficient) * integral);
  }
  out.value = static_cast<double>(acc.value());
  return out;
}

double full_space_value(const std::vector<ModeFunctionalValue>& values) {
  if (values.empty()) return 0.0;
  const int N = values.front().mode.dimension();
  const FunctionalId id = values.front().id;
  std::vector<const ModeFunctionalValue*> sorted;
  for (const auto& v : values) {
    if (v.mode.dimension() != N) throw domain_error("full_space_value: mixed dimensions");
    if (v.id != id) throw domain_error("full_space_value: mixed functionals");
    sorted.push_back(&v);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](auto* a, auto* b) { return a->mode.degree() < b->mode.degree(); });
  CompensatedSum<long double> acc;
  for (auto* v : sorted) acc.add(v->value);
  return static_cast<double>(acc.value());
}

double hardy_1d_ratio(const Mode& mode, const Profile& v, const QuadratureConfig& cfg) {
  const int a = mode.shifted_dimension();
  const double den = integrate(v, WeightedSeminorm(0, a - 1), cfg);
  if (!(den >= cfg.abs_tol)) throw degenerate_profile("hardy_1d_ratio: denominator vanishes");
  return integrate(v, WeightedSeminorm(1, a + 1), cfg) / den;
}

}  // namespace upsharp
