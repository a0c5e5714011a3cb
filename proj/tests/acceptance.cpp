// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "upsharp/constants.hpp"
#include "upsharp/errors.hpp"
#include "upsharp/extremals.hpp"
#include "upsharp/harmonic_field.hpp"
#include "upsharp/minimize.hpp"
#include "upsharp/parallel.hpp"
#include "upsharp/seminorms.hpp"

using namespace upsharp;
using upsharp::testing::rel_err;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

QuadratureConfig closed() {
  QuadratureConfig c;
  c.rule = QuadRule::closed_form_gamma;
  return c;
}

QuadratureConfig panels() {
  QuadratureConfig c;
  c.rule = QuadRule::gauss_legendre_panels;
  return c;
}

Rational quarter_square(int n) { return Rational(static_cast<int128>(n) * n, 4); }

void gaussian_extremals(Outcome& o) {
  double worst_closed = 0.0, worst_quad = 0.0;
  for (int N = 1; N <= 10; ++N) {
    for (double beta : {0.25, 1.0, 4.0}) {
      const auto c = extremal_quotient(PrincipleId::hup2, N, beta, EvalMode::closed_form);
      const auto q = extremal_quotient(PrincipleId::hup2, N, beta, EvalMode::quadrature, panels());
      const double target = (N + 2.0) * (N + 2.0) / 4.0;
      worst_closed = std::max(worst_closed, rel_err(c.quotient, target));
      worst_quad = std::max(worst_quad, rel_err(q.quotient, c.quotient));
      o.require(c.family == Family::gaussian, "extremal family is not Gaussian");
    }
  }
  o.require(worst_closed < 1e-12, "closed form off (N+2)^2/4");
  o.require(worst_quad < 1e-9, "quadrature disagrees with closed form");
  o.detail << "max closed-form rel err " << worst_closed << ", max quadrature rel diff " << worst_quad;
}

void hydrogen_extremals(Outcome& o) {
  double worst = 0.0;
  for (int N = 5; N <= 10; ++N) {
    const auto c = extremal_quotient(PrincipleId::hyup2, N, 1.0, EvalMode::closed_form);
    o.require(c.family == Family::hydrogen_second, "extremal family is not hydrogen_second");
    worst = std::max(worst, rel_err(c.quotient, (N + 1.0) * (N + 1.0) / 4.0));
  }
  o.require(worst < 1e-12, "closed form off (N+1)^2/4");
  o.detail << "max rel err " << worst;
}

void s_scan(Outcome& o) {
  for (int N = 2; N <= 50; ++N) {
    const auto s = scan_infimum(ScanFormula::lemma33_S, N);
    o.require(s.argmin == 0 && s.infimum == quarter_square(N + 2) && s.tail_certified,
              "N=" + std::to_string(N));
  }
  o.require(lemma33_S(2, 0) == Rational(4), "S(2,0)");
  o.require(lemma33_S(3, 0) == Rational(25, 4), "S(3,0)");
  o.require(lemma33_S(3, 1) == Rational(833, 100), "S(3,1)");
  o.detail << "N=2..50 infimum (N+2)^2/4 at k=0; S(3,1) = " << lemma33_S(3, 1).str();
}

void f_scan(Outcome& o) {
  for (int N = 5; N <= 50; ++N) {
    const auto s = scan_infimum(ScanFormula::lemma34_f, N);
    o.require(s.argmin == 0 && s.infimum == quarter_square(N + 1) && s.monotone_from_k1 && s.tail_certified,
              "N=" + std::to_string(N));
  }
  o.detail << "N=5..50 infimum (N+1)^2/4 at k=0, monotone from k=1; below 5:";
  for (int N = 2; N <= 4; ++N) {
    const auto s = scan_infimum(ScanFormula::lemma34_f, N);
    o.detail << " N=" << N << " argmin k=" << s.argmin << " inf=" << s.infimum.str();
  }
}

void identity_suite(Outcome& o) {
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  long evaluations = 0;
  for (int N = 2; N <= 8; ++N) {
    for (int k = 0; k <= 6; ++k) {
      const Mode m = make_mode(N, k);
      for (int trial = 0; trial < 50; ++trial) {
        const auto va = upsharp::testing::random_v(m, rng);
        const auto grid = upsharp::testing::grid_for(va, 0.0025);
        // cd6 keeps full order at the first node, where |u'|^2 need not vanish
        const auto u = SampledProfile::sample(unsubstitute_vk(m, va), grid, DiffScheme::cd6);
        const auto v = substitute_vk(m, u);
        for (auto id : all_functionals()) {
          if (!has_form(id, Form::v_form)) continue;
          const double a = eval_mode_functional(id, m, u, Form::u_form).value;
          const double b = eval_mode_functional(id, m, v, Form::v_form).value;
          worst = std::max(worst, rel_err(a, b));
          ++evaluations;
        }
      }
    }
  }
  o.require(worst < 1e-8, "u/v forms disagree");
  o.detail << evaluations << " pairs, max rel err " << worst;
}

void laplacian_vs_r2(Outcome& o) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> count(1, 4), degree(0, 6);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  double worst = 1e300;
  for (int N = 3; N <= 8; ++N) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ModeFunctionalValue> lap, r2;
      const int modes = count(rng);
      for (int j = 0; j < modes; ++j) {
        const Mode m = make_mode(N, degree(rng));
        const AnalyticProfile u = unsubstitute_vk(m, upsharp::testing::random_v(m, rng)).scaled(amp(rng));
        lap.push_back(eval_mode_functional(FunctionalId::laplacian_energy, m, u, Form::u_form, closed()));
        r2.push_back(eval_mode_functional(FunctionalId::r2_energy, m, u, Form::u_form, closed()));
      }
      const double a = full_space_value(lap), b = full_space_value(r2);
      worst = std::min(worst, (a - b) / std::max(a, 1e-300));
    }
  }
  o.require(worst >= -1e-9, "laplacian energy below r2 energy");
  o.detail << "min relative slack " << worst;
}

void weighted_hardy(Outcome& o) {
  std::mt19937_64 rng(4242);
  double worst = 1e300;
  for (int N = 2; N <= 6; ++N) {
    for (int k = 0; k <= 4; ++k) {
      const Mode m = make_mode(N, k);
      const double a = m.shifted_dimension(), c = a * a / 4;
      for (int trial = 0; trial < 100; ++trial) {
        const Profile v = upsharp::testing::random_v(m, rng);
        worst = std::min(worst, hardy_1d_ratio(m, v) - c);
      }
      // r^{-a/2+eps} e^{-r^2} tends to the constant as eps -> 0
      double prev = 1e300;
      for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        const Profile v = AnalyticProfile::monomial_cutoff(1.0, 1.0, -a / 2 + eps);
        const double q = hardy_1d_ratio(m, v, closed());
        o.require(q < prev && q >= c, "near-extremal sequence N=" + std::to_string(N) + " k=" + std::to_string(k));
        prev = q;
      }
      o.require(prev - c < 0.03, "near-extremal sequence does not approach the constant");
    }
  }
  o.require(worst >= -5e-3, "ratio below (N+2k)^2/4");
  o.detail << "min ratio - (N+2k)^2/4 = " << worst << "; near-extremal sequences decrease to the constant";
}

void variational(Outcome& o) {
  struct Case {
    QuotientKind q;
    int N, k;
  };
  const Case cases[] = {{QuotientKind::product_hup2, 2, 0},  {QuotientKind::product_hup2, 3, 0},
                        {QuotientKind::product_hup2, 3, 1},  {QuotientKind::product_hup2, 5, 0},
                        {QuotientKind::product_hyup2, 5, 0}, {QuotientKind::product_hyup2, 5, 1},
                        {QuotientKind::classic_hup, 1, 0},   {QuotientKind::classic_hup, 3, 0},
                        {QuotientKind::classic_hyup, 2, 0},  {QuotientKind::classic_hyup, 3, 0}};
  GridConfig grid;
  grid.M = 512;
  MinimizeOptions opts;
  opts.workers = workers_from_env();
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto r = minimize_quotient(make_problem(c.q, Mode(c.N, c.k), grid), opts);
    const double e = rel_err(r.min_value, *r.target);
    worst = std::max(worst, e);
    o.require(e < 0.02, to_string(c.q) + " N=" + std::to_string(c.N) + " k=" + std::to_string(c.k));
  }
  o.detail << std::size(cases) << " problems at M=512, max rel gap " << worst;
}

void combined(Outcome& o) {
  struct Case {
    CombinedQuotient q;
    ScanFormula f;
    int N;
    double expected;
  };
  const Case cases[] = {{CombinedQuotient::hup2, ScanFormula::lemma33_S, 2, 4.0},
                        {CombinedQuotient::hup2, ScanFormula::lemma33_S, 4, 9.0},
                        {CombinedQuotient::hyup2, ScanFormula::lemma34_f, 5, 9.0}};
  MinimizeOptions opts;
  opts.workers = workers_from_env();
  for (const auto& c : cases) {
    const auto b = mode_combined_bound(c.q, c.N, 6, {}, opts);
    const auto s = scan_infimum(c.f, c.N);
    o.require(rel_err(b.combined, c.expected) < 0.03 && b.exact_infimum == s.infimum &&
                  rel_err(b.combined, s.infimum.to_double()) < 0.03,
              to_string(c.q) + " N=" + std::to_string(c.N));
    o.detail << to_string(c.q) << " N=" << c.N << ": " << b.combined << " (exact " << s.infimum.str() << ") ";
  }
}

void vector_field(Outcome& o) {
  const PlanarField fields[] = {PlanarField({{0, AnalyticProfile::gaussian(1.0, 1.0)}}),
                                PlanarField({{1, AnalyticProfile::monomial_cutoff(1.0, 1.0, 1.0)}})};
  for (const auto& f : fields) {
    const auto [lhs, rhs] = vector_equiv_check_2d(f);
    o.require(std::abs(lhs - rhs) / rhs < 1e-6, "vector field energy differs from laplacian energy");
    o.detail << "lhs " << lhs << " rhs " << rhs << "; ";
  }
}

void conjecture(Outcome& o) {
  MinimizeOptions opts;
  opts.workers = workers_from_env();
  const auto cal = explore_conjecture(5, 4, {128, 256, 512}, {}, opts);
  o.require(rel_err(cal.estimate, 9.0) < 0.03, "N=5 calibration");
  o.detail << "N=5 estimate " << cal.estimate << ";";
  for (int N = 2; N <= 4; ++N) {
    const auto r = explore_conjecture(N, 4, {128, 256, 512}, {}, opts);
    o.require(!r.rows.empty(), "empty evidence table");
    o.detail << " N=" << N << " estimate " << r.estimate << " at k=" << r.estimate_k << " vs " << r.conjectured
             << (r.counterexample_candidate ? " (candidate)" : "");
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"Gaussian extremals reach (N+2)^2/4", gaussian_extremals},
      {"hydrogen-type extremals reach (N+1)^2/4", hydrogen_extremals},
      {"S scan infimum at k=0", s_scan},
      {"f scan infimum at k=0", f_scan},
      {"u/v form identities", identity_suite},
      {"laplacian energy dominates R2 energy", laplacian_vs_r2},
      {"weighted 1-d Hardy", weighted_hardy},
      {"variational recovery", variational},
      {"combined bounds", combined},
      {"planar vector-field equivalence", vector_field},
      {"conjecture explorer", conjecture},
  };
  int failed = 0, index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "threw: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s [%.1fs]: %s\n", o.pass ? "PASS" : "FAIL", index, name, secs, o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
