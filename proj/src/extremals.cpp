#include "upsharp/extremals.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "upsharp/errors.hpp"

namespace upsharp {

std::string to_string(EvalMode m) { return m == EvalMode::closed_form ? "closed_form" : "quadrature"; }

EvalMode eval_mode_from_string(const std::string& name) {
  if (name == "closed_form") return EvalMode::closed_form;
  if (name == "quadrature") return EvalMode::quadrature;
  throw domain_error("unknown evaluation mode '" + name + "'");
}

double sphere_measure(int N) {
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0);
}

AnalyticProfile extremal_profile(PrincipleId p, double beta, double alpha) {
  switch (p) {
    case PrincipleId::hup:
    case PrincipleId::hup2:
    case PrincipleId::hup2_radial: return AnalyticProfile::gaussian(alpha, beta);
    case PrincipleId::hyup: return AnalyticProfile::exponential(alpha, beta);
    case PrincipleId::hyup2:
    case PrincipleId::hyup2_radial: return AnalyticProfile::hydrogen_second(alpha, beta);
  }
  throw domain_error("unknown principle");
}

AnalyticProfile radial_laplacian(const AnalyticProfile& u, int N) {
  if (N == 1) return AnalyticProfile(u.expansion(2));
  return AnalyticProfile(u.expansion(2) + u.expansion(1).times_power(-1.0).scaled(N - 1.0));
}

namespace {

struct Labels {
  const char* a;
  const char* b;
  const char* c;
};

Labels labels(PrincipleId p) {
  switch (p) {
    case PrincipleId::hup: return {"int |grad u|^2", "int |x|^2 |u|^2", "int |u|^2"};
    case PrincipleId::hyup: return {"int |grad u|^2", "int |u|^2", "int |u|^2/|x|"};
    case PrincipleId::hup2: return {"int |Delta u|^2", "int |x|^2 |grad u|^2", "int |grad u|^2"};
    case PrincipleId::hyup2: return {"int |Delta u|^2", "int |grad u|^2", "int |grad u|^2/|x|"};
    case PrincipleId::hup2_radial: return {"int |R2 u|^2", "int |x|^2 |R1 u|^2", "int |R1 u|^2"};
    case PrincipleId::hyup2_radial: return {"int |R2 u|^2", "int |R1 u|^2", "int |R1 u|^2/|x|"};
  }
  return {"A", "B", "C"};
}

QuotientReport assemble(PrincipleId p, int N, const AnalyticProfile& u, EvalMode mode, double a, double b,
                        double c) {
  const auto sc = sharp_constant(p, N);
  const auto l = labels(p);
  QuotientReport r;
  r.principle = p;
  r.dimension = N;
  r.family = u.family();
  r.rate = u.rate();
  r.mode = mode;
  r.numerator_terms = {{l.a, a}, {l.b, b}};
  r.denominator = {l.c, c};
  if (!(c > 0.0)) throw degenerate_profile("quotient denominator vanishes");
  r.quotient = a * b / (c * c);
  r.predicted = sc.value.to_double();
  r.rel_gap = std::abs(r.quotient - r.predicted) / r.predicted;
  r.sphere_measure = sphere_measure(N);
  r.conjectural = sc.status == ProofStatus::conjectural;
  if (r.conjectural) r.note = "extremality conjectural in this dimension";
  return r;
}

// Seminorm specs (deriv, power) of the three factors; deriv 3 stands for Delta u.
std::array<std::pair<int, int>, 3> factor_specs(PrincipleId p, int N) {
  switch (p) {
    case PrincipleId::hup: return {{{1, N - 1}, {0, N + 1}, {0, N - 1}}};
    case PrincipleId::hyup: return {{{1, N - 1}, {0, N - 1}, {0, N - 2}}};
    case PrincipleId::hup2:
    case PrincipleId::hup2_radial: return {{{3, N - 1}, {1, N + 1}, {1, N - 1}}};
    case PrincipleId::hyup2:
    case PrincipleId::hyup2_radial: return {{{3, N - 1}, {1, N - 1}, {1, N - 2}}};
  }
  return {};
}

}  // namespace

QuotientReport radial_quotient(PrincipleId p, int N, const AnalyticProfile& u, EvalMode mode,
                               const QuadratureConfig& cfg) {
  sharp_constant(p, N);  // range check
  const auto specs = factor_specs(p, N);
  const AnalyticProfile lap = radial_laplacian(u, N);
  std::array<double, 3> val{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto [d, pw] = specs[i];
    const AnalyticProfile& f = d == 3 ? lap : u;
    const int deriv = d == 3 ? 0 : d;
    if (mode == EvalMode::closed_form) {
      val[i] = closed_form_seminorm(f, WeightedSeminorm(deriv, pw));
    } else {
      QuadratureConfig c = cfg;
      if (c.rule == QuadRule::closed_form_gamma) c.rule = QuadRule::gauss_legendre_panels;
      const double r_max = c.r_max > 0.0 ? c.r_max : default_r_max(u);
      // |Delta u|^2 is formed pointwise from u'' and u', not from the exp-polynomial.
      std::function<double(double)> g;
      if (d == 3) {
        g = [&u, N, pw](double r) {
          const double lp = u.eval(r, 2) + (N - 1) * u.eval(r, 1) / r;
          return std::pow(r, pw) * lp * lp;
        };
      } else {
        g = [&u, deriv, pw](double r) {
          const double v = u.eval(r, deriv);
          return std::pow(r, pw) * v * v;
        };
      }
      val[i] = integrate_function(g, 0.0, r_max, c).value;
    }
  }
  return assemble(p, N, u, mode, val[0], val[1], val[2]);
}

QuotientReport extremal_quotient(PrincipleId p, int N, double beta, EvalMode mode, const QuadratureConfig& cfg,
                                 double alpha) {
  if (!(beta > 0.0)) throw domain_error("rate must be positive");
  sharp_constant(p, N);
  const AnalyticProfile u = extremal_profile(p, beta, alpha);
  if (mode == EvalMode::quadrature) return radial_quotient(p, N, u, mode, cfg);
  const double a2 = alpha * alpha, b = beta;
  auto J = [b](int m) { return gamma_moment(MomentKind::gaussian_r2, b, m); };
  auto K = [b](int m) { return gamma_moment(MomentKind::exponential_r, b, m); };
  double A = 0, B = 0, C = 0;
  switch (p) {
    case PrincipleId::hup:
      // u' = -2 beta r e^{-beta r^2}
      A = 4 * b * b * J(N + 1);
      B = J(N + 1);
      C = J(N - 1);
      break;
    case PrincipleId::hyup:
      // u' = -beta e^{-beta r}
      A = b * b * K(N - 1);
      B = K(N - 1);
      C = K(N - 2);
      break;
    case PrincipleId::hup2:
    case PrincipleId::hup2_radial:
      // Delta u = 2 beta (2 beta r^2 - N) e^{-beta r^2}
      A = 4 * b * b * (4 * b * b * J(N + 3) - 4 * b * N * J(N + 1) + double(N) * N * J(N - 1));
      B = 4 * b * b * J(N + 3);
      C = 4 * b * b * J(N + 1);
      break;
    case PrincipleId::hyup2:
    case PrincipleId::hyup2_radial:
      // u' = -beta^2 r e^{-beta r}, Delta u = beta^2 (beta r - N) e^{-beta r}
      A = std::pow(b, 4) * (b * b * K(N + 1) - 2 * b * N * K(N) + double(N) * N * K(N - 1));
      B = std::pow(b, 4) * K(N + 1);
      C = std::pow(b, 4) * K(N);
      break;
  }
  return assemble(p, N, u, mode, a2 * A, a2 * B, a2 * C);
}

QuotientReport radial_extremal_quotient(PrincipleId p, int N, double beta, EvalMode mode,
                                        const QuadratureConfig& cfg) {
  if (p != PrincipleId::hup2_radial && p != PrincipleId::hyup2_radial)
    throw domain_error("radial_extremal_quotient takes hup2_radial or hyup2_radial");
  auto r = extremal_quotient(p, N, beta, mode, cfg);
  r.note = "radial u: R1 u = u', R2 u = u'' + (N-1)u'/r, so this is the k = 0 quotient";
  return r;
}

}  // namespace upsharp
