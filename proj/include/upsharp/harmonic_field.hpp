#ifndef UPSHARP_HARMONIC_FIELD_HPP
#define UPSHARP_HARMONIC_FIELD_HPP

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "upsharp/profiles.hpp"
#include "upsharp/quadrature.hpp"

namespace upsharp {

/**
 * Scalar field on the plane
 *
 *     u(x, y) = sum_j u_j(r) cos(k_j theta) = sum_j v_j(r) Re (x + i y)^{k_j},
 *
 * with v_j = u_j / r^{k_j}. Degrees must be distinct so that the modes are
 * orthogonal on the circle.
 */
class PlanarField {
public:
  struct Component {
    int degree;
    AnalyticProfile radial;  // u_k
  };

  explicit PlanarField(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }

  double value(double x, double y) const;
  Eigen::Vector2d gradient(double x, double y) const;
  Eigen::Matrix2d hessian(double x, double y) const;

  /// Half-width of the square that carries the field to truncation accuracy.
  double extent() const;

private:
  std::vector<Component> components_;
  std::vector<AnalyticProfile> v_;
};

/// Tensor-product Gauss-Legendre over [-L, L]^2 with panels graded toward both axes.
double tensor_integrate_2d(const std::function<double(double, double)>& g, double L,
                           const QuadratureConfig& cfg = {});

/// int |grad u|^2 over the plane, by 2-D quadrature.
double planar_gradient_energy(const PlanarField& u, const QuadratureConfig& cfg = {});
/// int (u_xx^2 + 2 u_xy^2 + u_yy^2), i.e. int |grad U|^2 for U = (-u_y, u_x).
double planar_rotated_gradient_energy(const PlanarField& u, const QuadratureConfig& cfg = {});
/// int |Delta u|^2 over the plane, by 2-D quadrature.
double planar_laplacian_energy(const PlanarField& u, const QuadratureConfig& cfg = {});

/// int_0^{2 pi} cos^2(k theta)
double circle_mode_norm(int degree);

/**
 * (lhs, rhs): lhs = int |grad U|^2 for U = (-u_y, u_x) by 2-D quadrature,
 * rhs = int |Delta u|^2 summed from the per-mode radial laplacian energies.
 */
std::pair<double, double> vector_equiv_check_2d(const PlanarField& u, const QuadratureConfig& cfg = {});

}  // namespace upsharp

#endif  // UPSHARP_HARMONIC_FIELD_HPP
