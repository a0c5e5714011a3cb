#ifndef UPSHARP_TESTS_SUPPORT_HPP
#define UPSHARP_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "upsharp/profiles.hpp"

namespace upsharp::testing {

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/**
 * Random v_k of the form (1 + c1 r^2 + c2 r^4 + c3 r^6) exp(-g r^2) with
 * positive leading factor. For the dimension-2, degree-1 mode an extra
 * factor r gives v(0) = 0.
 */
inline AnalyticProfile random_v(const Mode& mode, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), rate(0.5, 2.0);
  const double shift = (mode.dimension() == 2 && mode.degree() == 1) ? 1.0 : 0.0;
  std::vector<ExpTerm> t = {{1.0, shift}};
  for (int j = 1; j <= 3; ++j) t.push_back({coef(rng) * std::pow(0.6, j), 2.0 * j + shift});
  return AnalyticProfile(ExpPolynomial(2, rate(rng), std::move(t)));
}

/// Grid on [1e-12, r_last] with spacing close to h, r_last where exp(-g r^2) < 1e-20.
inline Eigen::VectorXd grid_for(const AnalyticProfile& v, double h) {
  const double r_last = std::sqrt(46.0 / v.rate()) + 0.5;
  const auto nodes = static_cast<Eigen::Index>(std::ceil(r_last / h)) + 1;
  return uniform_grid(1e-12, r_last, nodes);
}

}  // namespace upsharp::testing

#endif  // UPSHARP_TESTS_SUPPORT_HPP
