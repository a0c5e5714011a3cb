#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "upsharp/errors.hpp"
#include "upsharp/minimize.hpp"
#include "upsharp/seminorms.hpp"

using namespace upsharp;
using upsharp::testing::rel_err;

namespace {

bool nonincreasing(const std::vector<double>& h) {
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] > h[i - 1] * (1 + 1e-12)) return false;
  return true;
}

}  // namespace

TEST_CASE("problem invariants") {
  CHECK_THROWS_AS(make_problem(QuotientKind::product_hup2, Mode(2, 0), {1e-3, 14, 32}), domain_error);
  CHECK_THROWS_AS(make_problem(QuotientKind::product_hup2, Mode(2, 0), {0.0, 14, 128}), domain_error);
  CHECK_THROWS_AS(make_problem(QuotientKind::product_hup2, Mode(2, 0), {2.0, 1.0, 128}), domain_error);
  CHECK_THROWS_AS(make_problem(QuotientKind::classic_hyup, Mode(1, 0)), domain_error);
  CHECK_THROWS_AS(make_problem(QuotientKind::full_hyup2, Mode(1, 0)), domain_error);
  auto p = make_problem(QuotientKind::product_hyup2, Mode(3, 0));
  CHECK(p.grid.r_max == 40.0);
  CHECK(make_problem(QuotientKind::product_hup2, Mode(3, 0)).grid.r_max == 14.0);
  CHECK(*continuum_target(make_problem(QuotientKind::product_hup2, Mode(3, 1))) == 12.25);
  CHECK(*continuum_target(make_problem(QuotientKind::classic_hyup, Mode(3, 0))) == 1.0);
  CHECK(!continuum_target(make_problem(QuotientKind::full_hyup2, Mode(3, 1))));
  CHECK(quotient_from_string("full_hyup2") == QuotientKind::full_hyup2);
  CHECK_THROWS_AS(quotient_from_string("nope"), domain_error);
}

TEST_CASE("finite-element forms") {
  const Eigen::VectorXd nodes = uniform_grid(0.01, 5.0, 201);
  RadialFE fe(nodes, true);
  CHECK(fe.size() == 199);
  auto f = [](double r) { return r * std::exp(-r * r); };
  const Eigen::VectorXd x = fe.interpolate(f);
  const std::vector<FormTerm> local = {{1.0, 3, TermOperand::derivative}, {2.0, 1, TermOperand::value}};
  const Eigen::MatrixXd dense = fe.dense_form(local);
  const Eigen::SparseMatrix<double> sparse = fe.sparse_form(local);
  CHECK((dense - Eigen::MatrixXd(sparse)).norm() < 1e-14 * dense.norm());
  CHECK_THROWS_AS(fe.sparse_form({{1.0, 0, TermOperand::antiderivative}}), domain_error);

  // int r^2 F^2 with F = -int_r^{r_M} f for the piecewise-linear interpolant, by fine midpoints
  const Eigen::MatrixXd m = fe.dense_form({{1.0, 2, TermOperand::antiderivative}});
  const Eigen::VectorXd full = fe.full_values(x);
  const int sub = 200;
  double ref = 0.0, F = 0.0;
  for (Eigen::Index e = nodes.size() - 2; e >= 0; --e) {
    const double h = nodes[e + 1] - nodes[e];
    for (int s = sub - 1; s >= 0; --s) {
      const double t0 = double(s) / sub, t1 = double(s + 1) / sub, tm = 0.5 * (t0 + t1);
      const double fm = full[e] * (1 - tm) + full[e + 1] * tm;
      const double Fm = F - 0.5 * fm * h / sub;
      F -= fm * h / sub;
      const double r = nodes[e] + tm * h;
      ref += r * r * Fm * Fm * h / sub;
    }
  }
  ref += std::pow(nodes[0], 3) / 3.0 * F * F;
  CHECK(rel_err(x.dot(m * x), ref) < 1e-5);
}

TEST_CASE("correction factors reproduce the exact per-mode scans") {
  for (int N = 2; N <= 8; ++N) {
    for (int k = 0; k <= 12; ++k) {
      const int a = N + 2 * k;
      CHECK(correction_factor(CombinedQuotient::hup2, N, k) * Rational((a + 2) * (a + 2), 4) == lemma33_S(N, k));
      CHECK(correction_factor(CombinedQuotient::hyup2, N, k) * Rational((a + 1) * (a + 1), 4) == lemma34_f(N, k));
    }
  }
  CHECK(correction_factor(CombinedQuotient::hyup2, 3, 0) == Rational(1));
}

TEST_CASE("discrete quotients bound the sharp constants from above and converge") {
  struct Case {
    QuotientKind q;
    int N, k;
    std::function<double(double)> f;
  };
  const std::vector<Case> cases = {
      {QuotientKind::product_hup2, 3, 0, [](double r) { return r * std::exp(-0.3 * r * r); }},
      {QuotientKind::product_hup2, 2, 2, [](double r) { return r * std::exp(-0.3 * r * r); }},
      {QuotientKind::product_hyup2, 5, 1, [](double r) { return r * std::exp(-0.8 * r); }},
      {QuotientKind::classic_hup, 3, 0, [](double r) { return std::exp(-0.3 * r * r); }},
      {QuotientKind::classic_hyup, 3, 0, [](double r) { return std::exp(-0.8 * r); }},
  };
  for (const auto& c : cases) {
    double prev = INFINITY;
    for (int M : {128, 256, 512}) {
      GridConfig g;
      g.M = M;
      const auto d = discretize(make_problem(c.q, Mode(c.N, c.k), g));
      const double excess = discrete_quotient(d, c.f) / *continuum_target(d.problem) - 1.0;
      CHECK(excess >= 0.0);
      CHECK(excess < prev);
      prev = excess;
    }
    CHECK(prev < 0.02);
  }
}

TEST_CASE("per-mode minima recover the continuum constants") {
  struct Case {
    QuotientKind q;
    int N, k;
  };
  for (const Case c : {Case{QuotientKind::product_hup2, 2, 0}, Case{QuotientKind::product_hup2, 3, 1},
                       Case{QuotientKind::product_hup2, 5, 2}, Case{QuotientKind::product_hyup2, 5, 0},
                       Case{QuotientKind::product_hyup2, 3, 2}, Case{QuotientKind::classic_hup, 1, 0},
                       Case{QuotientKind::classic_hup, 3, 0}, Case{QuotientKind::classic_hyup, 2, 0},
                       Case{QuotientKind::classic_hyup, 5, 0}}) {
    CAPTURE(to_string(c.q));
    CAPTURE(c.N);
    CAPTURE(c.k);
    const auto p = make_problem(c.q, Mode(c.N, c.k));
    MinimizeOptions o;
    o.seed = 7;
    const auto r = minimize_quotient(p, o);
    CHECK(r.converged);
    CHECK(r.min_value >= *r.target);
    CHECK(rel_err(r.min_value, *r.target) < 0.02);
    CHECK(r.min_value <= r.initial_value);
    CHECK(nonincreasing(r.history));
    CHECK(r.argmin.size() == p.grid.M + 1);
    const auto o2 = eigen_oracle(p);
    CHECK(rel_err(o2.value, r.min_value) < 0.01);
  }
}

TEST_CASE("the product_hup2 example lands in its window") {
  GridConfig g{1e-3, 14.0, 512};
  MinimizeOptions o;
  o.seed = 7;
  const auto r = minimize_quotient(make_problem(QuotientKind::product_hup2, Mode(2, 0), g), o);
  CHECK(r.min_value >= 3.92);
  CHECK(r.min_value <= 4.08);
}

TEST_CASE("minimization is deterministic and independent of workers") {
  const auto p = make_problem(QuotientKind::product_hyup2, Mode(3, 1), {1e-3, 0.0, 128});
  MinimizeOptions o;
  o.seed = 11;
  const auto a = minimize_quotient(p, o);
  o.workers = 3;
  const auto b = minimize_quotient(p, o);
  CHECK(a.min_value == b.min_value);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.argmin.values() == b.argmin.values());
  o.seed = 12;
  CHECK(minimize_quotient(p, o).initial_value != a.initial_value);
}

TEST_CASE("budget exhaustion and collapse are signalled") {
  const auto p = make_problem(QuotientKind::product_hup2, Mode(2, 0), {1e-3, 14.0, 128});
  MinimizeOptions o;
  o.max_iterations = 2;
  o.restarts = 1;
  const auto r = minimize_quotient(p, o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.min_value < r.initial_value);
  o.init = Eigen::VectorXd::Zero(129);
  CHECK_THROWS_AS(minimize_quotient(p, o), degenerate_profile);
  o.init = Eigen::VectorXd::Zero(10);
  CHECK_THROWS_AS(minimize_quotient(p, o), domain_error);
  o.init.reset();
  o.restarts = 0;
  CHECK_THROWS_AS(minimize_quotient(p, o), domain_error);
}

TEST_CASE("explicit initial profile") {
  const auto p = make_problem(QuotientKind::product_hup2, Mode(3, 0), {1e-3, 14.0, 256});
  const auto d = discretize(p);
  Eigen::VectorXd init(d.fe.nodes().size());
  for (Eigen::Index i = 0; i < init.size(); ++i) init[i] = d.fe.nodes()[i] * std::exp(-0.5 * d.fe.nodes()[i]);
  MinimizeOptions o;
  o.init = init;
  o.restarts = 2;
  const auto r = minimize_quotient(p, o);
  CHECK(rel_err(r.min_value, 6.25) < 0.02);
}

TEST_CASE("full hydrogen quotient") {
  // k = 0 has no angular term
  const auto a = minimize_quotient(make_problem(QuotientKind::full_hyup2, Mode(4, 0), {1e-3, 0.0, 128}));
  const auto b = minimize_quotient(make_problem(QuotientKind::product_hyup2, Mode(4, 0), {1e-3, 0.0, 128}));
  CHECK(rel_err(a.min_value, b.min_value) < 1e-9);

  // u = x_1 exp(-|x|^2) in the plane: v = exp(-r^2), w = v'; frozen oracle value 192/(49 pi)
  const double witness = 192.0 / (49.0 * std::numbers::pi);
  const Mode m(2, 1);
  const auto v = AnalyticProfile::gaussian(1.0, 1.0);
  const double A = eval_mode_functional(FunctionalId::laplacian_energy, m, v, Form::v_form).value;
  const double B = eval_mode_functional(FunctionalId::grad_energy, m, v, Form::v_form).value;
  const double C = eval_mode_functional(FunctionalId::coulomb_grad_energy, m, v, Form::v_form).value;
  CHECK(rel_err(A * B / (C * C), witness) < 1e-12);
  const auto d = discretize(make_problem(QuotientKind::full_hyup2, m, {1e-3, 14.0, 1024}));
  CHECK(rel_err(discrete_quotient(d, [](double r) { return -2 * r * std::exp(-r * r); }), witness) < 1e-3);
  const auto r = minimize_quotient(d.problem);
  CHECK(r.min_value < witness);
  CHECK(rel_err(eigen_oracle(d.problem).value, r.min_value) < 0.01);
}

TEST_CASE("combined bound preconditions") {
  CHECK_THROWS_AS(mode_combined_bound(CombinedQuotient::hup2, 2, 3), domain_error);
  CHECK(combined_from_string("hyup2") == CombinedQuotient::hyup2);
  CHECK_THROWS_AS(combined_from_string("hup"), domain_error);
}

TEST_CASE("explorer calibration on a short ladder") {
  MinimizeOptions o;
  o.restarts = 2;
  const auto rep = explore_conjecture(5, 1, {128, 256}, {}, o);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.conjectured == 9.0);
  CHECK(rel_err(rep.estimate, 9.0) < 0.03);
  CHECK(rep.estimate_k == 0);
  CHECK_FALSE(rep.counterexample_candidate);
  CHECK_FALSE(rep.candidate);
  CHECK(rep.delta_disc > 0.0);
  CHECK_THROWS_AS(explore_conjecture(1, 2), domain_error);
  CHECK_THROWS_AS(explore_conjecture(3, 2, {}), domain_error);
}

TEST_CASE("line quotient") {
  for (double beta : {0.5, 1.0, 3.0}) {
    CHECK(n1_quotient_check(AnalyticProfile::gaussian(1.0, beta)) == doctest::Approx(2.25).epsilon(1e-13));
    CHECK(n1_quotient_check(AnalyticProfile::gaussian(2.0, beta).dilated(2.0)) ==
          doctest::Approx(n1_quotient_check(AnalyticProfile::gaussian(2.0, beta))).epsilon(1e-12));
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto u = upsharp::testing::random_v(Mode(1, 0), rng);
    CHECK(n1_quotient_check(u) >= 2.25 - 1e-3);
  }
  CHECK_THROWS_AS(n1_quotient_check(AnalyticProfile::exponential(1.0, 1.0)), domain_error);
}
