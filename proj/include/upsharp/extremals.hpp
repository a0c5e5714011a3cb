#ifndef UPSHARP_EXTREMALS_HPP
#define UPSHARP_EXTREMALS_HPP

#include <string>
#include <utility>
#include <vector>

#include "upsharp/constants.hpp"
#include "upsharp/profiles.hpp"
#include "upsharp/quadrature.hpp"

namespace upsharp {

enum class EvalMode { closed_form, quadrature };

std::string to_string(EvalMode m);
EvalMode eval_mode_from_string(const std::string& name);

/**
 * One uncertainty-principle quotient A*B/C^2 of a radial function. All three
 * integrals are radial (no sphere factor); sphere_measure is informational.
 */
struct QuotientReport {
  PrincipleId principle;
  int dimension;
  Family family;
  double rate;
  EvalMode mode;
  std::vector<std::pair<std::string, double>> numerator_terms;  // A, B
  std::pair<std::string, double> denominator;                    // C
  double quotient;
  double predicted;
  double rel_gap;
  double sphere_measure;
  bool conjectural;
  std::string note;
};

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
double sphere_measure(int N);

/// Gaussian for hup/hup2/hup2_radial, exponential for hyup, hydrogen-type for hyup2/hyup2_radial.
AnalyticProfile extremal_profile(PrincipleId p, double beta, double alpha = 1.0);

/// Delta u = u'' + (N-1) u'/r of a radial analytic profile, as an exp-polynomial.
AnalyticProfile radial_laplacian(const AnalyticProfile& u, int N);

/**
 * Quotient of a principle on an arbitrary radial analytic profile. In
 * closed_form mode every integral is a sum of gamma moments; in quadrature
 * mode each integrand (|Delta u|^2 included) is integrated numerically.
 */
QuotientReport radial_quotient(PrincipleId p, int N, const AnalyticProfile& u, EvalMode mode,
                               const QuadratureConfig& cfg = {});

/**
 * Quotient on the principle's extremal family. The closed form is assembled
 * from the moments J(m) = int r^m e^{-2 beta r^2} and K(m) = int r^m e^{-2 beta r}.
 */
QuotientReport extremal_quotient(PrincipleId p, int N, double beta, EvalMode mode,
                                 const QuadratureConfig& cfg = {}, double alpha = 1.0);

/// hup2_radial / hyup2_radial: the k = 0 scalar quotient, since R1 u = u' and R2 u = Delta u for radial u.
QuotientReport radial_extremal_quotient(PrincipleId p, int N, double beta, EvalMode mode = EvalMode::closed_form,
                                        const QuadratureConfig& cfg = {});

}  // namespace upsharp

#endif  // UPSHARP_EXTREMALS_HPP
