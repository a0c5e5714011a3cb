#ifndef UPSHARP_RADIAL_FE_HPP
#define UPSHARP_RADIAL_FE_HPP

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace upsharp {

/// What a quadratic-form term integrates: the unknown f, its derivative, or F(r) = -int_r^{r_max} f.
enum class TermOperand { value, derivative, antiderivative };

/// coefficient * int r^power |D f|^2
struct FormTerm {
  double coefficient;
  int power;
  TermOperand operand;
};

/**
 * Piecewise-linear finite elements on r_0 < ... < r_M with f(r_M) = 0.
 * f(r_0) is either fixed at 0 (dirichlet_left) or free; when free, f is
 * extended by its value f(r_0) on [0, r_0] and that piece is integrated
 * exactly. With Dirichlet data, f = 0 on [0, r_0].
 */
class RadialFE {
public:
  RadialFE(Eigen::VectorXd nodes, bool dirichlet_left);

  const Eigen::VectorXd& nodes() const { return nodes_; }
  bool dirichlet_left() const { return dirichlet_left_; }
  /// Number of unknowns.
  Eigen::Index size() const { return size_; }
  /// Grid index of unknown i.
  Eigen::Index node_of(Eigen::Index i) const { return first_ + i; }

  /// Sparse (tridiagonal) matrix of value and derivative terms; antiderivative terms are rejected.
  Eigen::SparseMatrix<double> sparse_form(const std::vector<FormTerm>& terms) const;
  /// Dense matrix of any combination of terms.
  Eigen::MatrixXd dense_form(const std::vector<FormTerm>& terms) const;

  /// Nodal values on the full grid (zeros at fixed nodes).
  Eigen::VectorXd full_values(const Eigen::VectorXd& x) const;
  /// Unknowns sampled from a function on the grid.
  template <typename F>
  Eigen::VectorXd interpolate(F&& f) const {
    Eigen::VectorXd x(size_);
    for (Eigen::Index i = 0; i < size_; ++i) x[i] = f(nodes_[node_of(i)]);
    return x;
  }

private:
  Eigen::VectorXd nodes_;
  bool dirichlet_left_;
  Eigen::Index first_;
  Eigen::Index size_;
};

}  // namespace upsharp

#endif  // UPSHARP_RADIAL_FE_HPP
