#ifndef UPSHARP_QUADRATURE_HPP
#define UPSHARP_QUADRATURE_HPP

#include <functional>
#include <string>

#include "upsharp/profiles.hpp"

namespace upsharp {

/// Integral of r^power |f^(deriv)(r)|^2 over (0, inf).
struct WeightedSeminorm {
  int deriv;
  int power;

  WeightedSeminorm(int deriv, int power);
};

enum class QuadRule { closed_form_gamma, gauss_legendre_panels, adaptive };

std::string to_string(QuadRule r);
QuadRule quad_rule_from_string(const std::string& name);

struct QuadratureConfig {
  QuadRule rule = QuadRule::gauss_legendre_panels;
  int panels = 64;
  int points_per_panel = 16;
  /// <= 0 selects the family default (12/sqrt(beta), 40/beta, or the grid end).
  double r_max = 0.0;
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  /// Subinterval budget of the adaptive rule.
  int max_subdivisions = 4000;

  void validate() const;
};

struct QuadratureResult {
  double value;
  double error;
};

/// Default truncation radius for an analytic profile.
double default_r_max(const AnalyticProfile& f);

/**
 * Weighted seminorm of a profile. Sampled profiles are integrated on
 * [r_first, r_last] with a fixed Gauss-Legendre rule per grid interval; the
 * configured rule only applies to analytic profiles.
 */
QuadratureResult integrate_with_error(const Profile& f, const WeightedSeminorm& s,
                                      const QuadratureConfig& cfg = {});
double integrate(const Profile& f, const WeightedSeminorm& s, const QuadratureConfig& cfg = {});

/// Exact (0, inf) value of r^power |f^(deriv)|^2 for an analytic profile.
double closed_form_seminorm(const AnalyticProfile& f, const WeightedSeminorm& s);

enum class MomentKind { gaussian_r2, exponential_r };

/// Integral over (0, inf) of r^power exp(-2 beta r^2) or r^power exp(-2 beta r).
double gamma_moment(MomentKind kind, double beta, int power);

/**
 * Integral of g over [a, b] by the numerical rule in cfg. The panel rule
 * grades the first panel geometrically toward a; the adaptive rule is
 * Gauss-Kronrod 7-15 seeded with the same panels.
 */
QuadratureResult integrate_function(const std::function<double(double)>& g, double a, double b,
                                    const QuadratureConfig& cfg = {});

}  // namespace upsharp

#endif  // UPSHARP_QUADRATURE_HPP
