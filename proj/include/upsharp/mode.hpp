#ifndef UPSHARP_MODE_HPP
#define UPSHARP_MODE_HPP

#include <cstdint>

namespace upsharp {

/**
 * A spherical-harmonic mode: dimension N and degree k, with the
 * Laplace-Beltrami eigenvalue c_k = k (k + N - 2) on S^{N-1}.
 *
 * On the line (N = 1) only the degree-zero mode exists.
 */
class Mode {
public:
  Mode(int dimension, int degree);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  std::int64_t eigenvalue() const { return eigenvalue_; }

  /// N + 2k, the effective dimension after the r^k substitution.
  int shifted_dimension() const { return dimension_ + 2 * degree_; }

  friend bool operator==(const Mode&, const Mode&) = default;

private:
  int dimension_;
  int degree_;
  std::int64_t eigenvalue_;
};

Mode make_mode(int dimension, int degree);

}  // namespace upsharp

#endif  // UPSHARP_MODE_HPP
