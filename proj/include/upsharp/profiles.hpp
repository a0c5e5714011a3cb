#ifndef UPSHARP_PROFILES_HPP
#define UPSHARP_PROFILES_HPP

#include <array>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "upsharp/mode.hpp"

namespace upsharp {

struct ExpTerm {
  double coefficient;
  double power;
};

/**
 * Radial function of the form
 *
 *     f(r) = exp(-rate * r^shape) * sum_j c_j r^{p_j},    shape in {1, 2}.
 *
 * The class is closed under differentiation, multiplication by r^p and
 * dilation, so every analytic family used here (Gaussian, exponential,
 * hydrogen-type, monomial times Gaussian) and every derivative of those is an
 * ExpPolynomial. Terms are kept sorted by power with equal powers merged.
 */
class ExpPolynomial {
public:
  ExpPolynomial(int shape, double rate, std::vector<ExpTerm> terms);

  int shape() const { return shape_; }
  double rate() const { return rate_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double operator()(double r) const;

  ExpPolynomial derivative() const;
  ExpPolynomial times_power(double p) const;
  ExpPolynomial scaled(double c) const;
  /// r -> f(lambda r)
  ExpPolynomial dilated(double lambda) const;

  /// Smallest power carrying a non-zero coefficient (the vanishing order at 0).
  double leading_power() const;

private:
  int shape_;
  double rate_;
  std::vector<ExpTerm> terms_;
};

/// Sum of two exp-polynomials with the same shape and rate.
ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b);

enum class Family { gaussian, exponential, hydrogen_second, monomial_cutoff, exp_polynomial };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// A closed-form radial profile; value and first two derivatives are exact.
class AnalyticProfile {
public:
  /// alpha * exp(-beta r^2)
  static AnalyticProfile gaussian(double amplitude, double rate);
  /// alpha * exp(-beta r)
  static AnalyticProfile exponential(double amplitude, double rate);
  /// alpha * (1 + beta r) * exp(-beta r)
  static AnalyticProfile hydrogen_second(double amplitude, double rate);
  /// alpha * r^m * exp(-beta r^2), m real
  static AnalyticProfile monomial_cutoff(double amplitude, double rate, double power);

  explicit AnalyticProfile(ExpPolynomial expansion);

  Family family() const { return family_; }
  double amplitude() const { return amplitude_; }
  double rate() const { return derivatives_[0].rate(); }
  double power() const { return power_; }

  const ExpPolynomial& expansion(int deriv = 0) const;
  double eval(double r, int deriv = 0) const;

  AnalyticProfile scaled(double c) const;
  AnalyticProfile dilated(double lambda) const;
  AnalyticProfile times_power(double p) const;

  /// Smooth on R^N when every power is a non-negative even integer and shape = 2.
  bool is_smooth_even() const;

private:
  AnalyticProfile(Family family, double amplitude, double power, ExpPolynomial expansion);

  Family family_;
  double amplitude_;
  double power_ = 0.0;
  std::array<ExpPolynomial, 3> derivatives_;
};

enum class DiffScheme { cd4, cd6, cd8 };

int scheme_order(DiffScheme s);
std::string to_string(DiffScheme s);
DiffScheme scheme_from_string(const std::string& name);

/**
 * Finite-difference weights of Fornberg for derivatives 0..max_deriv at `at`
 * from the given nodes. Column d holds the weights of the d-th derivative.
 */
Eigen::MatrixXd fornberg_weights(double at, const Eigen::Ref<const Eigen::VectorXd>& nodes,
                                 int max_deriv);

/**
 * Radial function known by its samples on a strictly increasing positive
 * grid. Derivatives at the nodes come from the configured stencil; off-node
 * values are local Lagrange interpolants of the nodal arrays. The profile is
 * zero outside [grid.front(), grid.back()].
 *
 * cd4 uses 5-point centred stencils inside and second-order stencils at the
 * two outermost nodes on each side. cd6 and cd8 keep full width everywhere by
 * shifting the stencil near the ends.
 */
class SampledProfile {
public:
  SampledProfile(Eigen::VectorXd grid, Eigen::VectorXd values, DiffScheme scheme = DiffScheme::cd4);

  static SampledProfile sample(const AnalyticProfile& f, const Eigen::VectorXd& grid,
                               DiffScheme scheme = DiffScheme::cd4);

  const Eigen::VectorXd& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return nodal_[0]; }
  /// Nodal derivative array (deriv in 0..2).
  const Eigen::VectorXd& nodal(int deriv) const;
  DiffScheme scheme() const { return scheme_; }
  Eigen::Index size() const { return grid_.size(); }
  double r_first() const { return grid_[0]; }
  double r_last() const { return grid_[grid_.size() - 1]; }

  double eval(double r, int deriv = 0) const;

  SampledProfile scaled(double c) const;

  /// Gauss-Legendre points of every grid interval (kQuadPoints each), their
  /// weights, and the interpolated profile derivatives at those points.
  static constexpr int kQuadPoints = 8;
  const Eigen::VectorXd& quad_nodes() const { return quad_nodes_; }
  const Eigen::VectorXd& quad_weights() const { return quad_weights_; }
  const Eigen::VectorXd& quad_values(int deriv) const;

private:
  void build_quadrature_table();

  Eigen::VectorXd grid_;
  DiffScheme scheme_;
  std::array<Eigen::VectorXd, 3> nodal_;
  Eigen::VectorXd quad_nodes_;
  Eigen::VectorXd quad_weights_;
  std::array<Eigen::VectorXd, 3> quad_values_;
};

Eigen::VectorXd uniform_grid(double r_first, double r_last, Eigen::Index nodes);
/// Nodes clustered toward r_first with a constant ratio between consecutive spacings.
Eigen::VectorXd geometric_grid(double r_first, double r_last, Eigen::Index nodes);

using Profile = std::variant<AnalyticProfile, SampledProfile>;

/// f(r), f'(r) or f''(r).
double eval_profile(const Profile& p, double r, int deriv);

/// v_k = u_k / r^k on the nodes.
SampledProfile substitute_vk(const Mode& mode, const SampledProfile& u);
/// u_k = r^k v_k on the nodes.
SampledProfile unsubstitute_vk(const Mode& mode, const SampledProfile& v);
AnalyticProfile substitute_vk(const Mode& mode, const AnalyticProfile& u);
AnalyticProfile unsubstitute_vk(const Mode& mode, const AnalyticProfile& v);

}  // namespace upsharp

#endif  // UPSHARP_PROFILES_HPP
