#include "upsharp/harmonic_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "upsharp/errors.hpp"
#include "upsharp/gauss_legendre.hpp"
#include "upsharp/seminorms.hpp"

namespace upsharp {

namespace {

struct Harmonic {
  double p;
  Eigen::Vector2d grad;
  Eigen::Matrix2d hess;
};

// P = Re z^k with z = x + i y; dP/dx = Re P'(z), dP/dy = -Im P'(z).
Harmonic harmonic(int k, double x, double y) {
  const std::complex<double> z(x, y);
  Harmonic h{};
  h.p = std::real(std::pow(z, k));
  if (k >= 1) {
    const auto d1 = static_cast<double>(k) * std::pow(z, k - 1);
    h.grad = {std::real(d1), -std::imag(d1)};
  } else {
    h.grad.setZero();
  }
  if (k >= 2) {
    const auto d2 = static_cast<double>(k) * (k - 1) * std::pow(z, k - 2);
    h.hess << std::real(d2), -std::imag(d2), -std::imag(d2), -std::real(d2);
  } else {
    h.hess.setZero();
  }
  return h;
}

}  // namespace

PlanarField::PlanarField(std::vector<Component> components) : components_(std::move(components)) {
  std::set<int> seen;
  for (const auto& c : components_) {
    if (c.degree < 0) throw domain_error("planar mode degree must be >= 0");
    if (!seen.insert(c.degree).second) throw domain_error("planar modes must have distinct degrees");
    const auto& e = c.radial.expansion();
    if (!e.is_zero() && e.leading_power() < c.degree)
      throw singular_weight("radial coefficient must vanish to order k at the origin");
    v_.push_back(substitute_vk(Mode(2, c.degree), c.radial));
  }
}

double PlanarField::value(double x, double y) const {
  const double r = std::hypot(x, y);
  double s = 0.0;
  for (std::size_t j = 0; j < v_.size(); ++j) s += v_[j].eval(r) * harmonic(components_[j].degree, x, y).p;
  return s;
}

Eigen::Vector2d PlanarField::gradient(double x, double y) const {
  const double r = std::hypot(x, y);
  const Eigen::Vector2d xr(x / r, y / r);
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (std::size_t j = 0; j < v_.size(); ++j) {
    const auto h = harmonic(components_[j].degree, x, y);
    g += v_[j].eval(r, 1) * h.p * xr + v_[j].eval(r) * h.grad;
  }
  return g;
}

Eigen::Matrix2d PlanarField::hessian(double x, double y) const {
  const double r = std::hypot(x, y);
  const Eigen::Vector2d xr(x / r, y / r);
  Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
  for (std::size_t j = 0; j < v_.size(); ++j) {
    const auto h = harmonic(components_[j].degree, x, y);
    const double v = v_[j].eval(r), v1 = v_[j].eval(r, 1), v2 = v_[j].eval(r, 2);
    const Eigen::Matrix2d cross = xr * h.grad.transpose();
    H += (v2 - v1 / r) * h.p * xr * xr.transpose() + (v1 / r) * h.p * Eigen::Matrix2d::Identity() +
         v1 * (cross + cross.transpose()) + v * h.hess;
  }
  return H;
}

double PlanarField::extent() const {
  double L = 0.0;
  for (const auto& v : v_) L = std::max(L, default_r_max(v));
  return L;
}

double tensor_integrate_2d(const std::function<double(double, double)>& g, double L,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  // 1-D nodes on [0, L]: uniform panels with the first one halved repeatedly.
  const int levels = 30;
  const int n = cfg.points_per_panel;
  const auto rule = gauss_legendre<long double>(n);
  const double h = L / cfg.panels;
  std::vector<std::pair<double, double>> panels;
  double lo = h * std::ldexp(1.0, -levels);
  panels.emplace_back(0.0, lo);
  for (int i = levels - 1; i >= 0; --i) {
    const double hi = h * std::ldexp(1.0, -i);
    panels.emplace_back(lo, hi);
    lo = hi;
  }
  for (int p = 1; p < cfg.panels; ++p) panels.emplace_back(p * h, (p + 1) * h);
  std::vector<double> x, w;
  for (auto [a, b] : panels) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
      const double xi = mid + half * static_cast<double>(rule.nodes[i]);
      const double wi = half * static_cast<double>(rule.weights[i]);
      x.push_back(xi);
      w.push_back(wi);
      x.push_back(-xi);
      w.push_back(wi);
    }
  }
  CompensatedSum<long double> acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += w[j] * g(x[i], x[j]);
    acc.add(w[i] * row);
  }
  return static_cast<double>(acc.value());
}

namespace {

QuadratureConfig planar_defaults(const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.panels = std::min(c.panels, 24);
  c.points_per_panel = std::min(c.points_per_panel, 12);
  return c;
}

}  // namespace

double planar_gradient_energy(const PlanarField& u, const QuadratureConfig& cfg) {
  return tensor_integrate_2d([&u](double x, double y) { return u.gradient(x, y).squaredNorm(); },
                             u.extent(), planar_defaults(cfg));
}

double planar_rotated_gradient_energy(const PlanarField& u, const QuadratureConfig& cfg) {
  // grad U for U = (-u_y, u_x) has entries -u_yx, -u_yy, u_xx, u_xy.
  return tensor_integrate_2d(
      [&u](double x, double y) {
        const Eigen::Matrix2d H = u.hessian(x, y);
        Eigen::Matrix2d gradU;
        gradU << -H(1, 0), -H(1, 1), H(0, 0), H(0, 1);
        return gradU.squaredNorm();
      },
      u.extent(), planar_defaults(cfg));
}

double planar_laplacian_energy(const PlanarField& u, const QuadratureConfig& cfg) {
  return tensor_integrate_2d(
      [&u](double x, double y) {
        const double t = u.hessian(x, y).trace();
        return t * t;
      },
      u.extent(), planar_defaults(cfg));
}

double circle_mode_norm(int degree) { return degree == 0 ? 2.0 * std::numbers::pi : std::numbers::pi; }

std::pair<double, double> vector_equiv_check_2d(const PlanarField& u, const QuadratureConfig& cfg) {
  const double lhs = planar_rotated_gradient_energy(u, cfg);
  double rhs = 0.0;
  for (const auto& c : u.components()) {
    const Mode m(2, c.degree);
    const auto v = substitute_vk(m, c.radial);
    QuadratureConfig rc = cfg;
    rc.rule = QuadRule::closed_form_gamma;
    rhs += circle_mode_norm(c.degree) * eval_mode_functional(FunctionalId::laplacian_energy, m, v, Form::v_form, rc).value;
  }
  return {lhs, rhs};
}

}  // namespace upsharp
