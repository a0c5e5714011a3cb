#include "upsharp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <vector>

#include "upsharp/errors.hpp"
#include "upsharp/gauss_legendre.hpp"

namespace upsharp {

WeightedSeminorm::WeightedSeminorm(int d, int p) : deriv(d), power(p) {
  if (d < 0 || d > 2) throw domain_error("seminorm derivative order must be 0, 1 or 2");
  if (p < -5) throw domain_error("seminorm power must be >= -5");
}

std::string to_string(QuadRule r) {
  switch (r) {
    case QuadRule::closed_form_gamma: return "closed_form_gamma";
    case QuadRule::gauss_legendre_panels: return "gauss_legendre_panels";
    case QuadRule::adaptive: return "adaptive";
  }
  return "?";
}

QuadRule quad_rule_from_string(const std::string& name) {
  for (auto r : {QuadRule::closed_form_gamma, QuadRule::gauss_legendre_panels, QuadRule::adaptive})
    if (to_string(r) == name) return r;
  throw domain_error("unknown quadrature rule '" + name + "'");
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw domain_error("quadrature tolerances must be positive");
  if (r_max < 0.0 || !std::isfinite(r_max)) throw domain_error("r_max must be positive");
  if (panels < 1 || points_per_panel < 2 || panels * points_per_panel < 32)
    throw domain_error("panels * points_per_panel must be at least 32");
  if (max_subdivisions < 1) throw domain_error("adaptive budget must be positive");
}

namespace {

const GaussRule<double>& cached_rule(int n) {
  static std::mutex m;
  static std::map<int, GaussRule<double>> cache;
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto hp = gauss_legendre<long double>(n);
    it = cache.emplace(n, GaussRule<double>{hp.nodes.cast<double>(), hp.weights.cast<double>()}).first;
  }
  return it->second;
}

constexpr int kGradingLevels = 50;

std::vector<std::pair<double, double>> graded_panels(double a, double b, int panels) {
  std::vector<std::pair<double, double>> out;
  const double h = (b - a) / panels;
  double lo = a + h * std::ldexp(1.0, -kGradingLevels);
  out.emplace_back(a, lo);
  for (int i = kGradingLevels - 1; i >= 0; --i) {
    const double hi = a + h * std::ldexp(1.0, -i);
    out.emplace_back(lo, hi);
    lo = hi;
  }
  for (int p = 1; p < panels; ++p) out.emplace_back(a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
  return out;
}

long double panel_sum(const std::function<double(double)>& g,
                      const std::vector<std::pair<double, double>>& panels, int n) {
  const auto& rule = cached_rule(n);
  CompensatedSum<long double> acc;
  for (auto [lo, hi] : panels) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    long double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<long double>(rule.weights[i]) * g(mid + half * rule.nodes[i]);
    acc.add(s * half);
  }
  return acc.value();
}

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (non-negative half).
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& g, double lo, double hi) {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  const double fc = g(mid);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f = g(mid - dx) + g(mid + dx);
    resk += kWgk[j] * f;
    if (j % 2 == 1) resg += kWg[j / 2] * f;
  }
  return {lo, hi, resk * half, std::abs((resk - resg) * half)};
}

QuadratureResult adaptive(const std::function<double(double)>& g, double a, double b,
                          const QuadratureConfig& cfg) {
  std::priority_queue<Segment> queue;
  long double total_err = 0;
  for (auto [lo, hi] : graded_panels(a, b, cfg.panels)) {
    auto s = gk15(g, lo, hi);
    total_err += s.error;
    queue.push(s);
  }
  auto current_value = [&queue] {
    auto copy = queue;
    CompensatedSum<long double> acc;
    while (!copy.empty()) {
      acc.add(copy.top().value);
      copy.pop();
    }
    return static_cast<double>(acc.value());
  };
  int splits = 0;
  double value = current_value();
  while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (splits >= cfg.max_subdivisions)
      throw no_convergence("adaptive quadrature exceeded its subdivision budget (error estimate " +
                           std::to_string(static_cast<double>(total_err)) + ")");
    auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = gk15(g, worst.lo, mid), right = gk15(g, mid, worst.hi);
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
    if (splits % 64 == 0 || total_err <= cfg.abs_tol) value = current_value();
    else value += left.value + right.value - worst.value;
  }
  return {current_value(), static_cast<double>(total_err)};
}

void check_convergent(const AnalyticProfile& f, const WeightedSeminorm& s) {
  const auto& e = f.expansion(s.deriv);
  if (e.is_zero()) return;
  if (s.power + 2.0 * e.leading_power() <= -1.0)
    throw divergent_integral("integral of r^" + std::to_string(s.power) + " |f^(" +
                             std::to_string(s.deriv) + ")|^2 diverges at the origin");
}

}  // namespace

double gamma_moment(MomentKind kind, double beta, int power) {
  if (!(beta > 0.0)) throw domain_error("gamma_moment needs beta > 0");
  if (power < 0) throw divergent_integral("gamma_moment needs power >= 0");
  const long double q = kind == MomentKind::gaussian_r2 ? 2.0L : 1.0L;
  const long double x = (power + 1.0L) / q;
  return static_cast<double>(std::exp(std::lgamma(x) - x * std::log(2.0L * beta)) / q);
}

double default_r_max(const AnalyticProfile& f) {
  const double beta = f.rate();
  return f.expansion().shape() == 2 ? 12.0 / std::sqrt(beta) : 40.0 / beta;
}

double closed_form_seminorm(const AnalyticProfile& f, const WeightedSeminorm& s) {
  const auto& e = f.expansion(s.deriv);
  if (e.is_zero()) return 0.0;
  check_convergent(f, s);
  // |f^(d)|^2 r^p = exp(-2 beta r^q) * sum_{i,j} c_i c_j r^{p_i + p_j + p}
  std::map<double, long double> square;
  for (const auto& a : e.terms())
    for (const auto& b : e.terms())
      square[a.power + b.power + s.power] += static_cast<long double>(a.coefficient) * b.coefficient;
  const long double q = e.shape();
  const long double log2b = std::log(2.0L * e.rate());
  CompensatedSum<long double> acc;
  for (auto [m, c] : square) {
    if (c == 0) continue;
    const long double x = (m + 1.0L) / q;
    acc.add(c * std::exp(std::lgamma(x) - x * log2b) / q);
  }
  return static_cast<double>(acc.value());
}

QuadratureResult integrate_function(const std::function<double(double)>& g, double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) return {0.0, 0.0};
  if (cfg.rule == QuadRule::adaptive) return adaptive(g, a, b, cfg);
  if (cfg.rule == QuadRule::closed_form_gamma)
    throw domain_error("closed_form_gamma applies to analytic profiles only");
  const auto panels = graded_panels(a, b, cfg.panels);
  const int n = cfg.points_per_panel;
  const long double fine = panel_sum(g, panels, n);
  const long double coarse = panel_sum(g, panels, std::max(2, (3 * n) / 4));
  return {static_cast<double>(fine), static_cast<double>(std::abs(fine - coarse))};
}

QuadratureResult integrate_with_error(const Profile& f, const WeightedSeminorm& s,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (const auto* sp = std::get_if<SampledProfile>(&f)) {
    const auto& r = sp->quad_nodes();
    const auto& w = sp->quad_weights();
    const auto& v = sp->quad_values(s.deriv);
    CompensatedSum<long double> acc;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double rp = s.power == 0 ? 1.0 : std::pow(r[i], s.power);
      acc.add(static_cast<long double>(w[i]) * rp * v[i] * v[i]);
    }
    return {static_cast<double>(acc.value()), 0.0};
  }
  const auto& af = std::get<AnalyticProfile>(f);
  const auto& e = af.expansion(s.deriv);
  if (e.is_zero()) return {0.0, 0.0};
  check_convergent(af, s);
  if (cfg.rule == QuadRule::closed_form_gamma) return {closed_form_seminorm(af, s), 0.0};
  const double r_max = cfg.r_max > 0.0 ? cfg.r_max : default_r_max(af);
  const int p = s.power;
  auto g = [&e, p](double r) {
    const double v = e(r);
    return std::pow(r, p) * v * v;
  };
  return integrate_function(g, 0.0, r_max, cfg);
}

double integrate(const Profile& f, const WeightedSeminorm& s, const QuadratureConfig& cfg) {
  return integrate_with_error(f, s, cfg).value;
}

}  // namespace upsharp
