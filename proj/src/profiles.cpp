#include "upsharp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "upsharp/errors.hpp"
#include "upsharp/gauss_legendre.hpp"

namespace upsharp {

ExpPolynomial::ExpPolynomial(int shape, double rate, std::vector<ExpTerm> terms)
    : shape_(shape), rate_(rate) {
  if (shape != 1 && shape != 2) throw domain_error("exp-polynomial shape must be 1 or 2");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw domain_error("rate must be positive and finite");
  std::sort(terms.begin(), terms.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return a.power < b.power; });
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.power))
      throw domain_error("exp-polynomial term must be finite");
    if (!terms_.empty() && terms_.back().power == t.power)
      terms_.back().coefficient += t.coefficient;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const ExpTerm& t) { return t.coefficient == 0.0; });
}

double ExpPolynomial::operator()(double r) const {
  if (terms_.empty()) return 0.0;
  const double e = std::exp(-rate_ * (shape_ == 1 ? r : r * r));
  double s = 0.0;
  for (const auto& t : terms_) s += t.coefficient * (t.power == 0.0 ? 1.0 : std::pow(r, t.power));
  return s * e;
}

ExpPolynomial ExpPolynomial::derivative() const {
  // d/dr [c r^p e^{-b r^q}] = c p r^{p-1} e - c b q r^{p+q-1} e
  std::vector<ExpTerm> out;
  out.reserve(2 * terms_.size());
  for (const auto& t : terms_) {
    if (t.power != 0.0) out.push_back({t.coefficient * t.power, t.power - 1.0});
    out.push_back({-t.coefficient * rate_ * shape_, t.power + shape_ - 1.0});
  }
  return ExpPolynomial(shape_, rate_, std::move(out));
}

ExpPolynomial ExpPolynomial::times_power(double p) const {
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) t.power += p;
  return ExpPolynomial(shape_, rate_, std::move(out));
}

ExpPolynomial ExpPolynomial::scaled(double c) const {
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) t.coefficient *= c;
  return ExpPolynomial(shape_, rate_, std::move(out));
}

ExpPolynomial ExpPolynomial::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw domain_error("dilation factor must be positive");
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) t.coefficient *= std::pow(lambda, t.power);
  return ExpPolynomial(shape_, rate_ * std::pow(lambda, shape_), std::move(out));
}

double ExpPolynomial::leading_power() const {
  if (terms_.empty()) return std::numeric_limits<double>::infinity();
  return terms_.front().power;
}

ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
  if (a.shape() != b.shape() || a.rate() != b.rate())
    throw domain_error("exp-polynomials with different exponentials cannot be added");
  std::vector<ExpTerm> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return ExpPolynomial(a.shape(), a.rate(), std::move(t));
}

std::string to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::exponential: return "exponential";
    case Family::hydrogen_second: return "hydrogen_second";
    case Family::monomial_cutoff: return "monomial_cutoff";
    case Family::exp_polynomial: return "exp_polynomial";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  for (auto f : {Family::gaussian, Family::exponential, Family::hydrogen_second,
                 Family::monomial_cutoff, Family::exp_polynomial})
    if (to_string(f) == name) return f;
  throw domain_error("unknown profile family '" + name + "'");
}

AnalyticProfile::AnalyticProfile(Family family, double amplitude, double power,
                                 ExpPolynomial expansion)
    : family_(family),
      amplitude_(amplitude),
      power_(power),
      derivatives_{expansion, expansion.derivative(), expansion.derivative().derivative()} {}

AnalyticProfile::AnalyticProfile(ExpPolynomial expansion)
    : AnalyticProfile(Family::exp_polynomial, 1.0, 0.0, std::move(expansion)) {}

AnalyticProfile AnalyticProfile::gaussian(double amplitude, double rate) {
  return {Family::gaussian, amplitude, 0.0, ExpPolynomial(2, rate, {{amplitude, 0.0}})};
}

AnalyticProfile AnalyticProfile::exponential(double amplitude, double rate) {
  return {Family::exponential, amplitude, 0.0, ExpPolynomial(1, rate, {{amplitude, 0.0}})};
}

AnalyticProfile AnalyticProfile::hydrogen_second(double amplitude, double rate) {
  return {Family::hydrogen_second, amplitude, 0.0,
          ExpPolynomial(1, rate, {{amplitude, 0.0}, {amplitude * rate, 1.0}})};
}

AnalyticProfile AnalyticProfile::monomial_cutoff(double amplitude, double rate, double power) {
  return {Family::monomial_cutoff, amplitude, power, ExpPolynomial(2, rate, {{amplitude, power}})};
}

const ExpPolynomial& AnalyticProfile::expansion(int deriv) const {
  if (deriv < 0 || deriv > 2) throw domain_error("derivative order must be 0, 1 or 2");
  return derivatives_[static_cast<std::size_t>(deriv)];
}

double AnalyticProfile::eval(double r, int deriv) const {
  if (!(r > 0.0)) throw domain_error("profile evaluated at r <= 0");
  return expansion(deriv)(r);
}

AnalyticProfile AnalyticProfile::scaled(double c) const {
  return {family_, amplitude_ * c, power_, derivatives_[0].scaled(c)};
}

AnalyticProfile AnalyticProfile::dilated(double lambda) const {
  auto e = derivatives_[0].dilated(lambda);
  double amp = family_ == Family::monomial_cutoff ? amplitude_ * std::pow(lambda, power_) : amplitude_;
  return {family_, amp, power_, std::move(e)};
}

AnalyticProfile AnalyticProfile::times_power(double p) const {
  if (family_ == Family::gaussian || family_ == Family::monomial_cutoff)
    return monomial_cutoff(amplitude_, rate(), power_ + p);
  return AnalyticProfile(derivatives_[0].times_power(p));
}

bool AnalyticProfile::is_smooth_even() const {
  if (derivatives_[0].shape() != 2) return false;
  for (const auto& t : derivatives_[0].terms()) {
    if (t.power < 0.0 || std::fmod(t.power, 2.0) != 0.0) return false;
  }
  return true;
}

int scheme_order(DiffScheme s) {
  switch (s) {
    case DiffScheme::cd4: return 4;
    case DiffScheme::cd6: return 6;
    case DiffScheme::cd8: return 8;
  }
  return 4;
}

std::string to_string(DiffScheme s) { return "cd" + std::to_string(scheme_order(s)); }

DiffScheme scheme_from_string(const std::string& name) {
  if (name == "cd4") return DiffScheme::cd4;
  if (name == "cd6") return DiffScheme::cd6;
  if (name == "cd8") return DiffScheme::cd8;
  throw domain_error("unknown differentiation scheme '" + name + "'");
}

Eigen::MatrixXd fornberg_weights(double at, const Eigen::Ref<const Eigen::VectorXd>& x,
                                 int max_deriv) {
  const Eigen::Index n = x.size();
  const int m = max_deriv;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = x[0] - at;
  c(0, 0) = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<Eigen::Index>(i, m));
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - at;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// First node and width of the stencil used at node i for derivative d.
std::pair<Eigen::Index, Eigen::Index> stencil(DiffScheme s, Eigen::Index i, Eigen::Index n, int d) {
  if (s == DiffScheme::cd4) {
    if (i >= 2 && i + 2 < n) return {i - 2, 5};
    if (i == 1 || i + 2 == n) return {i - 1, 3};
    // Outermost node: 3 points for f', 4 for f'' keep second order.
    const Eigen::Index w = d == 1 ? 3 : 4;
    return {i == 0 ? 0 : n - w, w};
  }
  const Eigen::Index w = scheme_order(s) + 1;
  Eigen::Index first = i - w / 2;
  first = std::clamp<Eigen::Index>(first, 0, n - w);
  return {first, w};
}

}  // namespace

SampledProfile::SampledProfile(Eigen::VectorXd grid, Eigen::VectorXd values, DiffScheme scheme)
    : grid_(std::move(grid)), scheme_(scheme) {
  const Eigen::Index n = grid_.size();
  if (n < 8) throw domain_error("sampled profile needs at least 8 nodes");
  if (values.size() != n) throw domain_error("grid and values differ in length");
  if (!(grid_[0] > 0.0)) throw domain_error("grid nodes must be positive");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(grid_[i] > grid_[i - 1])) throw domain_error("grid must be strictly increasing");
  if (!values.allFinite()) throw domain_error("sampled values must be finite");
  if (n < scheme_order(scheme) + 1) throw domain_error("grid too short for the scheme");

  nodal_[0] = std::move(values);
  for (int d = 1; d <= 2; ++d) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto [first, w] = stencil(scheme_, i, n, d);
      Eigen::MatrixXd wts = fornberg_weights(grid_[i], grid_.segment(first, w), d);
      out[i] = wts.col(d).dot(nodal_[0].segment(first, w));
    }
    nodal_[static_cast<std::size_t>(d)] = std::move(out);
  }
  build_quadrature_table();
}

void SampledProfile::build_quadrature_table() {
  static const auto rule = gauss_legendre<double>(kQuadPoints);
  const Eigen::Index n = grid_.size();
  const Eigen::Index w = scheme_order(scheme_) + 2;
  const Eigen::Index total = (n - 1) * kQuadPoints;
  quad_nodes_.resize(total);
  quad_weights_.resize(total);
  for (auto& q : quad_values_) q.resize(total);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double a = grid_[j], b = grid_[j + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const Eigen::Index first = std::clamp<Eigen::Index>(j - (w / 2 - 1), 0, n - w);
    for (int q = 0; q < kQuadPoints; ++q) {
      const Eigen::Index idx = j * kQuadPoints + q;
      const double r = mid + half * rule.nodes[q];
      quad_nodes_[idx] = r;
      quad_weights_[idx] = half * rule.weights[q];
      Eigen::VectorXd lw = fornberg_weights(r, grid_.segment(first, w), 0).col(0);
      for (std::size_t d = 0; d < 3; ++d) quad_values_[d][idx] = lw.dot(nodal_[d].segment(first, w));
    }
  }
}

const Eigen::VectorXd& SampledProfile::quad_values(int deriv) const {
  if (deriv < 0 || deriv > 2) throw domain_error("derivative order must be 0, 1 or 2");
  return quad_values_[static_cast<std::size_t>(deriv)];
}

SampledProfile SampledProfile::sample(const AnalyticProfile& f, const Eigen::VectorXd& grid,
                                      DiffScheme scheme) {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = f.eval(grid[i], 0);
  return SampledProfile(grid, std::move(v), scheme);
}

const Eigen::VectorXd& SampledProfile::nodal(int deriv) const {
  if (deriv < 0 || deriv > 2) throw domain_error("derivative order must be 0, 1 or 2");
  return nodal_[static_cast<std::size_t>(deriv)];
}

double SampledProfile::eval(double r, int deriv) const {
  if (!(r > 0.0)) throw domain_error("profile evaluated at r <= 0");
  const auto& a = nodal(deriv);
  const Eigen::Index n = grid_.size();
  if (r < grid_[0] || r > grid_[n - 1]) return 0.0;
  auto it = std::upper_bound(grid_.data(), grid_.data() + n, r);
  Eigen::Index j = std::clamp<Eigen::Index>((it - grid_.data()) - 1, 0, n - 2);
  if (r == grid_[j]) return a[j];
  if (r == grid_[j + 1]) return a[j + 1];
  const Eigen::Index w = scheme_order(scheme_) + 2;
  const Eigen::Index first = std::clamp<Eigen::Index>(j - (w / 2 - 1), 0, n - w);
  Eigen::MatrixXd wts = fornberg_weights(r, grid_.segment(first, w), 0);
  return wts.col(0).dot(a.segment(first, w));
}

SampledProfile SampledProfile::scaled(double c) const {
  return SampledProfile(grid_, c * nodal_[0], scheme_);
}

Eigen::VectorXd uniform_grid(double r_first, double r_last, Eigen::Index nodes) {
  if (!(r_first > 0.0) || !(r_last > r_first) || nodes < 2)
    throw domain_error("uniform grid needs 0 < r_first < r_last and at least 2 nodes");
  return Eigen::VectorXd::LinSpaced(nodes, r_first, r_last);
}

Eigen::VectorXd geometric_grid(double r_first, double r_last, Eigen::Index nodes) {
  if (!(r_first > 0.0) || !(r_last > r_first) || nodes < 2)
    throw domain_error("geometric grid needs 0 < r_first < r_last and at least 2 nodes");
  Eigen::VectorXd g(nodes);
  const double lo = std::log(r_first), hi = std::log(r_last);
  for (Eigen::Index i = 0; i < nodes; ++i)
    g[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes - 1));
  g[0] = r_first;
  g[nodes - 1] = r_last;
  return g;
}

double eval_profile(const Profile& p, double r, int deriv) {
  return std::visit([&](const auto& f) { return f.eval(r, deriv); }, p);
}

SampledProfile substitute_vk(const Mode& mode, const SampledProfile& u) {
  if (mode.degree() == 0) return u;
  Eigen::VectorXd v = u.values().array() / u.grid().array().pow(mode.degree());
  return SampledProfile(u.grid(), std::move(v), u.scheme());
}

SampledProfile unsubstitute_vk(const Mode& mode, const SampledProfile& v) {
  if (mode.degree() == 0) return v;
  Eigen::VectorXd u = v.values().array() * v.grid().array().pow(mode.degree());
  return SampledProfile(v.grid(), std::move(u), v.scheme());
}

AnalyticProfile substitute_vk(const Mode& mode, const AnalyticProfile& u) {
  if (mode.degree() == 0) return u;
  return u.times_power(-mode.degree());
}

AnalyticProfile unsubstitute_vk(const Mode& mode, const AnalyticProfile& v) {
  if (mode.degree() == 0) return v;
  return v.times_power(mode.degree());
}

}  // namespace upsharp
