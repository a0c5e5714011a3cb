#ifndef UPSHARP_SEMINORMS_HPP
#define UPSHARP_SEMINORMS_HPP

#include <string>
#include <vector>

#include "upsharp/mode.hpp"
#include "upsharp/profiles.hpp"
#include "upsharp/quadrature.hpp"

namespace upsharp {

enum class FunctionalId {
  grad_energy,
  weighted_grad_energy,
  coulomb_grad_energy,
  laplacian_energy,
  r1_energy,
  r1_weighted_energy,
  r1_coulomb_energy,
  r2_energy,
  l2_norm,
};

enum class Form { u_form, v_form };

std::string to_string(FunctionalId id);
FunctionalId functional_from_string(const std::string& name);
std::string to_string(Form f);
const std::vector<FunctionalId>& all_functionals();

/// coefficient * integral of r^power |f^(deriv)|^2
struct TermSpec {
  double coefficient;
  int deriv;
  int power;
};

bool has_form(FunctionalId id, Form form);

/**
 * The integral terms of a functional for one mode. Terms whose coefficient
 * vanishes are dropped, so e.g. the c_k-weighted pieces disappear at k = 0.
 * Throws form_unavailable when no expression exists for (id, form).
 */
std::vector<TermSpec> functional_terms(FunctionalId id, const Mode& mode, Form form);

/// Human-readable label such as "3*int r^1 |v''|^2".
std::string term_label(const TermSpec& t, Form form);

struct LabeledTerm {
  std::string label;
  TermSpec spec;
  double integral;
  double value() const { return spec.coefficient * integral; }
};

struct ModeFunctionalValue {
  Mode mode;
  FunctionalId id;
  Form form;
  std::vector<LabeledTerm> terms;
  double value;
};

/**
 * Evaluates a functional of the radial coefficient `profile` of one mode,
 * given as u_k (u_form) or v_k (v_form). Values carry no sphere-measure
 * factor.
 *
 * Admissibility near the origin is checked for sampled profiles and raises
 * singular_weight: u_form input for k >= 1 must vanish to order k, and in
 * dimension 2 the laplacian and r2 functionals need v_0'(0) = 0 and
 * v_1(0) = 0.
 */
ModeFunctionalValue eval_mode_functional(FunctionalId id, const Mode& mode, const Profile& profile,
                                         Form form, const QuadratureConfig& cfg = {});

/// Sum over modes; entries must share dimension and functional.
double full_space_value(const std::vector<ModeFunctionalValue>& values);

/// int r^{a+1}|v'|^2 / int r^{a-1}|v|^2 with a = N + 2k.
double hardy_1d_ratio(const Mode& mode, const Profile& v, const QuadratureConfig& cfg = {});

/// Order of vanishing of a sampled profile at its first node, from the log-slope of |f|.
double estimated_vanishing_order(const SampledProfile& f);

}  // namespace upsharp

#endif  // UPSHARP_SEMINORMS_HPP
