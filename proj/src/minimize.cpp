#include "upsharp/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SparseCholesky>

#include "upsharp/errors.hpp"
#include "upsharp/extremals.hpp"
#include "upsharp/parallel.hpp"

namespace upsharp {

std::string to_string(QuotientKind q) {
  switch (q) {
    case QuotientKind::product_hup2: return "product_hup2";
    case QuotientKind::product_hyup2: return "product_hyup2";
    case QuotientKind::classic_hup: return "classic_hup";
    case QuotientKind::classic_hyup: return "classic_hyup";
    case QuotientKind::hardy_1d: return "hardy_1d";
    case QuotientKind::full_hyup2: return "full_hyup2";
  }
  return "?";
}

QuotientKind quotient_from_string(const std::string& name) {
  for (auto q : {QuotientKind::product_hup2, QuotientKind::product_hyup2, QuotientKind::classic_hup,
                 QuotientKind::classic_hyup, QuotientKind::hardy_1d, QuotientKind::full_hyup2})
    if (to_string(q) == name) return q;
  throw domain_error("unknown quotient '" + name + "'");
}

std::string to_string(Spacing s) { return s == Spacing::uniform ? "uniform" : "geometric"; }

Spacing spacing_from_string(const std::string& name) {
  if (name == "uniform") return Spacing::uniform;
  if (name == "geometric") return Spacing::geometric;
  throw domain_error("unknown spacing '" + name + "'");
}

std::string to_string(CombinedQuotient q) { return q == CombinedQuotient::hup2 ? "hup2" : "hyup2"; }

CombinedQuotient combined_from_string(const std::string& name) {
  if (name == "hup2") return CombinedQuotient::hup2;
  if (name == "hyup2") return CombinedQuotient::hyup2;
  throw domain_error("combined bound takes hup2 or hyup2, not '" + name + "'");
}

namespace {

bool gaussian_type(QuotientKind q) {
  return q == QuotientKind::product_hup2 || q == QuotientKind::classic_hup || q == QuotientKind::hardy_1d;
}

bool product_type(QuotientKind q) {
  return q == QuotientKind::product_hup2 || q == QuotientKind::product_hyup2 || q == QuotientKind::full_hyup2;
}

struct Forms {
  std::vector<FormTerm> a, b, c;
};

Forms forms_of(const VariationalProblem& p) {
  using O = TermOperand;
  const int a = p.mode.shifted_dimension();
  const int k = p.mode.degree();
  Forms f;
  if (product_type(p.quotient)) {
    f.a.push_back({1.0, a - 1, O::derivative});
    if (a != 1) f.a.push_back({double(a - 1), a - 3, O::value});
  }
  switch (p.quotient) {
    case QuotientKind::product_hup2:
      f.b = {{1.0, a + 1, O::value}};
      f.c = {{1.0, a - 1, O::value}};
      break;
    case QuotientKind::product_hyup2:
      f.b = {{1.0, a - 1, O::value}};
      f.c = {{1.0, a - 2, O::value}};
      break;
    case QuotientKind::full_hyup2:
      f.b = {{1.0, a - 1, O::value}};
      f.c = {{1.0, a - 2, O::value}};
      if (k > 0) f.c.push_back({double(k), a - 4, O::antiderivative});
      break;
    case QuotientKind::classic_hup:
      f.a = {{1.0, a - 1, O::derivative}};
      f.b = {{1.0, a + 1, O::value}};
      f.c = {{1.0, a - 1, O::value}};
      break;
    case QuotientKind::classic_hyup:
      f.a = {{1.0, a - 1, O::derivative}};
      f.b = {{1.0, a - 1, O::value}};
      f.c = {{1.0, a - 2, O::value}};
      break;
    case QuotientKind::hardy_1d:
      f.a = {{1.0, a + 1, O::derivative}};
      f.b = {{1.0, a - 1, O::value}};
      f.c = {{1.0, a - 1, O::value}};
      break;
  }
  return f;
}

Eigen::VectorXd make_nodes(const GridConfig& g) {
  return g.spacing == Spacing::uniform ? uniform_grid(g.r_min, g.r_max, g.M + 1)
                                       : geometric_grid(g.r_min, g.r_max, g.M + 1);
}

double family_value(const VariationalProblem& p, double r) {
  const double rmax = p.grid.r_max;
  if (gaussian_type(p.quotient)) {
    const double beta = 40.0 / (rmax * rmax);
    const double e = std::exp(-beta * r * r);
    return p.quotient == QuotientKind::product_hup2 ? r * e : e;
  }
  const double beta = 32.0 / rmax;
  const double e = std::exp(-beta * r);
  return p.quotient == QuotientKind::classic_hyup ? e : r * e;
}

struct Run {
  Eigen::VectorXd x;
  double value;
  double initial;
  int iterations;
  bool converged;
  std::vector<double> history;
};

double form(const Eigen::SparseMatrix<double>& m, const Eigen::VectorXd& x) { return x.dot(m * x); }

Run descend(const DiscreteProblem& d, Eigen::VectorXd x, const MinimizeOptions& opts) {
  const double tiny = 1e-300;
  auto normalize = [&](Eigen::VectorXd& v) {
    const double c = v.dot(d.apply_C(v));
    if (!(c > tiny) || !std::isfinite(c)) throw degenerate_profile("normalization term collapsed");
    v /= std::sqrt(c);
  };
  normalize(x);
  Run run;
  auto q_of = [&](const Eigen::VectorXd& v) {
    const double c = v.dot(d.apply_C(v));
    if (!(c > tiny)) return std::numeric_limits<double>::infinity();
    return form(d.A, v) * form(d.B, v) / (c * c);
  };
  double q = q_of(x);
  run.initial = q;
  run.history.push_back(q);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  Eigen::SparseMatrix<double> P = d.A + d.B;
  solver.analyzePattern(P);
  double alpha = 1.0;
  int quiet = 0;
  run.converged = false;
  // Polak-Ribiere conjugation; the dilation direction is nearly flat and plain descent crawls along it.
  Eigen::VectorXd dir_prev, g_prev, pg_prev;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Eigen::VectorXd ax = d.A * x, bx = d.B * x, cx = d.apply_C(x);
    const double A = x.dot(ax), B = x.dot(bx), C = x.dot(cx);
    const Eigen::VectorXd g = 2.0 * (B * ax + A * bx) / (C * C) - 4.0 * A * B * cx / (C * C * C);
    P = (2.0 * B / (C * C)) * d.A + (2.0 * A / (C * C)) * d.B;
    solver.factorize(P);
    if (solver.info() != Eigen::Success) throw no_convergence("preconditioner factorization failed");
    const Eigen::VectorXd pg = solver.solve(g);
    Eigen::VectorXd dir = -pg;
    if (dir_prev.size() > 0) {
      const double beta = std::max(0.0, g.dot(pg - pg_prev) / g_prev.dot(pg_prev));
      dir += beta * dir_prev;
      if (!(g.dot(dir) < 0.0)) dir = -pg;
    }
    const double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      run.converged = true;
      break;
    }
    Eigen::VectorXd trial;
    double qt = q;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      trial = x + alpha * dir;
      qt = q_of(trial);
      if (qt <= q + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // no descent left at working precision
      run.converged = true;
      break;
    }
    for (int grow = 0; grow < 20; ++grow) {
      const Eigen::VectorXd longer = x + 2.0 * alpha * dir;
      const double ql = q_of(longer);
      if (!(ql < qt)) break;
      trial = longer;
      qt = ql;
      alpha *= 2.0;
    }
    const double scale = 1.0 / std::sqrt(trial.dot(d.apply_C(trial)));
    normalize(trial);
    x = std::move(trial);
    dir_prev = scale * dir;
    alpha = 1.0;
    g_prev = g;
    pg_prev = pg;
    const double prev = q;
    q = std::min(q_of(x), prev);
    run.history.push_back(q);
    quiet = (prev - q) <= opts.tolerance * q ? quiet + 1 : 0;
    if (quiet >= 5) {
      run.converged = true;
      ++it;
      break;
    }
  }
  run.iterations = it;
  run.value = q;
  run.x = std::move(x);
  return run;
}

}  // namespace

VariationalProblem make_problem(QuotientKind q, Mode mode, GridConfig grid) {
  const int N = mode.dimension();
  if ((q == QuotientKind::product_hyup2 || q == QuotientKind::classic_hyup || q == QuotientKind::full_hyup2) && N < 2)
    throw domain_error(to_string(q) + " needs N >= 2");
  if (grid.r_max == 0.0) grid.r_max = gaussian_type(q) ? 14.0 : 40.0;
  if (!(grid.r_min > 0.0)) throw domain_error("r_min must be positive");
  if (!(grid.r_max > grid.r_min)) throw domain_error("r_max must exceed r_min");
  if (grid.M < 64) throw domain_error("M must be at least 64");
  return {mode, q, grid};
}

std::optional<double> continuum_target(const VariationalProblem& p) {
  const double a = p.mode.shifted_dimension();
  switch (p.quotient) {
    case QuotientKind::product_hup2: return (a + 2) * (a + 2) / 4;
    case QuotientKind::product_hyup2: return (a + 1) * (a + 1) / 4;
    case QuotientKind::classic_hup:
    case QuotientKind::hardy_1d: return a * a / 4;
    case QuotientKind::classic_hyup: return (a - 1) * (a - 1) / 4;
    case QuotientKind::full_hyup2:
      if (p.mode.degree() == 0) return (a + 1) * (a + 1) / 4;
      return std::nullopt;
  }
  return std::nullopt;
}

Eigen::VectorXd DiscreteProblem::apply_C(const Eigen::VectorXd& x) const {
  if (C_dense) return *C_dense * x;
  return C * x;
}

double DiscreteProblem::quotient(const Eigen::VectorXd& x) const {
  const double c = x.dot(apply_C(x));
  if (!(c > 0.0)) throw degenerate_profile("quotient denominator vanishes");
  return form(A, x) * form(B, x) / (c * c);
}

SampledProfile DiscreteProblem::profile(const Eigen::VectorXd& x) const {
  return SampledProfile(fe.nodes(), fe.full_values(x));
}

DiscreteProblem discretize(const VariationalProblem& p) {
  const VariationalProblem q = make_problem(p.quotient, p.mode, p.grid);
  RadialFE fe(make_nodes(q.grid), product_type(q.quotient));
  const Forms f = forms_of(q);
  std::vector<FormTerm> local;
  bool dense = false;
  for (const auto& t : f.c) {
    if (t.operand == TermOperand::antiderivative)
      dense = true;
    else
      local.push_back(t);
  }
  DiscreteProblem d{q, fe, fe.sparse_form(f.a), fe.sparse_form(f.b), fe.sparse_form(local), std::nullopt};
  if (dense) d.C_dense = fe.dense_form(f.c);
  return d;
}

double discrete_quotient(const DiscreteProblem& d, const std::function<double(double)>& f) {
  return d.quotient(d.fe.interpolate(f));
}

MinimizationResult minimize_quotient(const VariationalProblem& p, const MinimizeOptions& opts) {
  if (opts.restarts < 1) throw domain_error("need at least one restart");
  if (opts.max_iterations < 1) throw domain_error("iteration budget must be positive");
  const DiscreteProblem d = discretize(p);
  Eigen::VectorXd base;
  if (opts.init) {
    const Eigen::VectorXd& v = *opts.init;
    if (v.size() != d.fe.nodes().size()) throw domain_error("initial profile does not match the grid");
    base.resize(d.fe.size());
    for (Eigen::Index i = 0; i < d.fe.size(); ++i) base[i] = v[d.fe.node_of(i)];
    if (!base.allFinite()) throw domain_error("initial profile is not finite");
  } else {
    base = d.fe.interpolate([&](double r) { return family_value(d.problem, r); });
  }

  std::vector<Run> runs(static_cast<std::size_t>(opts.restarts));
  parallel_for(runs.size(), opts.workers, [&](std::size_t i) {
    std::seed_seq seq{std::uint64_t(opts.seed), std::uint64_t(i), std::uint64_t(p.mode.dimension()),
                      std::uint64_t(p.mode.degree()), std::uint64_t(p.quotient)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd x = base;
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] *= 1.0 + opts.noise * u(rng);
    runs[i] = descend(d, std::move(x), opts);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;
  Run& r = runs[best];
  return MinimizationResult{d.problem, r.value, d.profile(r.x), r.iterations, r.converged,
                            std::move(r.history), r.initial, int(best), continuum_target(d.problem)};
}

double smallest_eigenvalue(const Eigen::SparseMatrix<double>& K,
                           const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_C, Eigen::VectorXd& x,
                           int max_iterations, double tolerance) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  if (solver.info() != Eigen::Success) throw no_convergence("pencil factorization failed");
  Eigen::VectorXd cx = apply_C(x);
  double lambda = x.dot(K * x) / x.dot(cx);
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd y = solver.solve(cx);
    const Eigen::VectorXd cy = apply_C(y);
    const double n = std::sqrt(y.dot(cy));
    if (!(n > 0.0)) throw degenerate_profile("inverse iteration collapsed");
    x = y / n;
    cx = cy / n;
    const double next = x.dot(K * x);
    if (std::abs(next - lambda) <= tolerance * std::abs(next)) return next;
    lambda = next;
  }
  throw no_convergence("inverse iteration did not settle");
}

OracleResult eigen_oracle(const VariationalProblem& p) {
  const DiscreteProblem d = discretize(p);
  Eigen::VectorXd x = d.fe.interpolate([&](double r) { return family_value(d.problem, r); });
  const double t0 = std::sqrt(form(d.B, x) / form(d.A, x));
  auto applyC = [&d](const Eigen::VectorXd& v) { return d.apply_C(v); };
  int evals = 0;
  auto phi = [&](double s) {
    const double t = std::exp(s);
    Eigen::SparseMatrix<double> K = t * d.A + d.B / t;
    ++evals;
    try {
      return smallest_eigenvalue(K, applyC, x) / 2.0;
    } catch (const no_convergence&) {
      // far from the optimum the pencil is dominated by grid-scale modes
      x = d.fe.interpolate([&](double r) { return family_value(d.problem, r); });
      return std::numeric_limits<double>::infinity();
    }
  };
  const int n = 25;
  const double s0 = std::log(t0), span = std::log(1e3);
  std::vector<double> s(n), v(n);
  for (int i = 0; i < n; ++i) {
    s[i] = s0 - span + 2 * span * i / (n - 1);
    v[i] = phi(s[i]);
  }
  const int i = int(std::min_element(v.begin(), v.end()) - v.begin());
  double lo = s[std::max(i - 1, 0)], hi = s[std::min(i + 1, n - 1)];
  const double g = (std::sqrt(5.0) - 1) / 2;
  double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
  double f1 = phi(m1), f2 = phi(m2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - g * (hi - lo);
      f1 = phi(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + g * (hi - lo);
      f2 = phi(m2);
    }
  }
  const double best = std::min({f1, f2, v[i]});
  const double s_best = best == v[i] ? s[i] : (f1 < f2 ? m1 : m2);
  return {best * best, std::exp(s_best), evals};
}

Rational correction_factor(CombinedQuotient q, int N, int k) {
  if (k == 0) return Rational(1);
  if (q == CombinedQuotient::hup2) {
    const int128 t = N + 2 * k;
    return Rational(t * t - 8 * k, t * t);
  }
  const int128 t = N + 2 * k - 3;
  const int128 den = t * t + 4 * k;
  if (den == 0) throw pole_error("correction factor has a pole");
  return Rational(t * t * t * t, den * den);
}

CombinedBound mode_combined_bound(CombinedQuotient q, int N, int k_max, GridConfig grid, const MinimizeOptions& opts) {
  if (k_max < 4) throw domain_error("k_max must be at least 4");
  const QuotientKind kind = q == CombinedQuotient::hup2 ? QuotientKind::product_hup2 : QuotientKind::product_hyup2;
  const ScanFormula formula = q == CombinedQuotient::hup2 ? ScanFormula::lemma33_S : ScanFormula::lemma34_f;
  CombinedBound out{q, N, k_max, grid, {}, std::numeric_limits<double>::infinity(), -1, Rational(0),
                    scan_infimum(formula, N)};
  out.rows.resize(std::size_t(k_max + 1));
  MinimizeOptions inner = opts;
  inner.workers = 1;
  inner.init.reset();
  parallel_for(out.rows.size(), opts.workers, [&](std::size_t idx) {
    const int k = int(idx);
    const int a = N + 2 * k;
    const int shift = q == CombinedQuotient::hup2 ? 2 : 1;
    CombinedRow row;
    row.k = k;
    const Rational exact_mode((a + shift) * (a + shift), 4);
    const Rational factor = correction_factor(q, N, k);
    row.per_mode_exact = exact_mode.to_double();
    row.factor = factor.to_double();
    row.exact = factor * exact_mode;
    try {
      const auto res = minimize_quotient(make_problem(kind, Mode(N, k), grid), inner);
      row.per_mode_min = res.min_value;
      row.corrected = row.factor * res.min_value;
      row.complete = res.converged;
      if (!res.converged) row.failure = "iteration budget exhausted";
    } catch (const error& e) {
      row.per_mode_min = row.corrected = std::numeric_limits<double>::quiet_NaN();
      row.complete = false;
      row.failure = e.what();
    }
    out.rows[idx] = row;
  });
  bool first = true;
  for (const auto& row : out.rows) {
    if (first || row.exact < out.exact_infimum) out.exact_infimum = row.exact;
    first = false;
    if (std::isfinite(row.corrected) && row.corrected < out.combined) {
      out.combined = row.corrected;
      out.argmin_k = row.k;
    }
  }
  return out;
}

ConjectureReport explore_conjecture(int N, int k_max, const std::vector<int>& ladder, GridConfig grid,
                                    const MinimizeOptions& opts) {
  if (N < 2) throw domain_error("the explorer needs N >= 2");
  if (k_max < 0) throw domain_error("k_max must be nonnegative");
  if (ladder.empty()) throw domain_error("resolution ladder is empty");
  std::vector<int> sorted = ladder;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t nk = std::size_t(k_max + 1);
  ConjectureReport rep;
  rep.dimension = N;
  rep.k_max = k_max;
  rep.ladder = sorted;
  rep.conjectured = (N + 1) * (N + 1) / 4.0;
  rep.rows.resize(sorted.size() * nk);
  std::vector<std::optional<SampledProfile>> profiles(rep.rows.size());

  MinimizeOptions inner = opts;
  inner.workers = 1;
  inner.init.reset();
  parallel_for(rep.rows.size(), opts.workers, [&](std::size_t idx) {
    const int M = sorted[idx / nk];
    const int k = int(idx % nk);
    GridConfig g = grid;
    g.M = M;
    const auto relaxed = minimize_quotient(make_problem(QuotientKind::product_hyup2, Mode(N, k), g), inner);
    ConjectureRow row{k, M, relaxed.min_value * correction_factor(CombinedQuotient::hyup2, N, k).to_double(), 0.0,
                      relaxed.converged};
    if (k == 0) {
      // no angular term: the full quotient is the product quotient
      row.full = relaxed.min_value;
      profiles[idx] = relaxed.argmin;
    } else {
      const auto full = minimize_quotient(make_problem(QuotientKind::full_hyup2, Mode(N, k), g), inner);
      row.full = full.min_value;
      row.converged = row.converged && full.converged;
      profiles[idx] = full.argmin;
    }
    rep.rows[idx] = row;
  });

  auto level_min = [&](std::size_t level, bool full) {
    std::size_t best = level * nk;
    for (std::size_t j = level * nk; j < (level + 1) * nk; ++j) {
      const double v = full ? rep.rows[j].full : rep.rows[j].relaxed;
      const double b = full ? rep.rows[best].full : rep.rows[best].relaxed;
      if (v < b) best = j;
    }
    return best;
  };
  const std::size_t top = sorted.size() - 1;
  const std::size_t best = level_min(top, true);
  rep.estimate = rep.rows[best].full;
  rep.estimate_k = rep.rows[best].k;
  rep.relaxed_bound = rep.rows[level_min(top, false)].relaxed;
  rep.delta_disc = sorted.size() > 1 ? std::abs(rep.estimate - rep.rows[level_min(top - 1, true)].full)
                                     : 0.02 * rep.estimate;
  rep.counterexample_candidate = rep.estimate < rep.conjectured - 3.0 * rep.delta_disc;
  rep.candidate_k = rep.estimate_k;
  if (rep.counterexample_candidate) rep.candidate = profiles[best];
  return rep;
}

double n1_quotient_check(const AnalyticProfile& u) {
  if (!u.is_smooth_even()) throw domain_error("n1_quotient_check needs an even profile");
  return radial_quotient(PrincipleId::hup2, 1, u, EvalMode::closed_form).quotient;
}

}  // namespace upsharp
