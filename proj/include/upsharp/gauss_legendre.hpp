#ifndef UPSHARP_GAUSS_LEGENDRE_HPP
#define UPSHARP_GAUSS_LEGENDRE_HPP

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "upsharp/errors.hpp"

namespace upsharp {

template <typename Scalar>
struct GaussRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;    // on [-1, 1]
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw domain_error("Gauss-Legendre rule needs n >= 1");
  GaussRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 1;
    for (int it = 0; it < 100; ++it) {
      Scalar p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * std::numeric_limits<Scalar>::epsilon()) break;
    }
    {
      Scalar p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? Scalar(1) : n * (x * p1 - p0) / (x * x - 1);
    }
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

/// Running sum with Neumaier compensation.
template <typename Scalar>
class CompensatedSum {
public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

private:
  Scalar sum_ = 0;
  Scalar comp_ = 0;
};

}  // namespace upsharp

#endif  // UPSHARP_GAUSS_LEGENDRE_HPP
