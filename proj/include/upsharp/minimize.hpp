#ifndef UPSHARP_MINIMIZE_HPP
#define UPSHARP_MINIMIZE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "upsharp/constants.hpp"
#include "upsharp/mode.hpp"
#include "upsharp/profiles.hpp"
#include "upsharp/radial_fe.hpp"
#include "upsharp/rational.hpp"

namespace upsharp {

/**
 * Per-mode quotients A*B/C^2, with a = N + 2k.
 *
 * product_*: unknown w = v_k', Dirichlet at r_min, A = int r^{a-1} w'^2 + (a-1) int r^{a-3} w^2.
 *   product_hup2   B = int r^{a+1} w^2, C = int r^{a-1} w^2           -> (a+2)^2/4
 *   product_hyup2  B = int r^{a-1} w^2, C = int r^{a-2} w^2           -> (a+1)^2/4
 *   full_hyup2     as product_hyup2 with C += k int r^{a-4} v^2, v = -int_r w.
 *                  This is the unrelaxed mode-k quotient of the second-order hydrogen principle.
 * classic_* and hardy_1d: unknown v, free at r_min.
 *   classic_hup    int r^{a-1} v'^2 * int r^{a+1} v^2 / (int r^{a-1} v^2)^2 -> a^2/4
 *   classic_hyup   int r^{a-1} v'^2 * int r^{a-1} v^2 / (int r^{a-2} v^2)^2 -> (a-1)^2/4
 *   hardy_1d       int r^{a+1} v'^2 / int r^{a-1} v^2                     -> a^2/4
 */
enum class QuotientKind { product_hup2, product_hyup2, classic_hup, classic_hyup, hardy_1d, full_hyup2 };

std::string to_string(QuotientKind q);
QuotientKind quotient_from_string(const std::string& name);

enum class Spacing { uniform, geometric };

std::string to_string(Spacing s);
Spacing spacing_from_string(const std::string& name);

struct GridConfig {
  double r_min = 1e-3;
  double r_max = 0.0;  // 0 selects the quotient's default
  int M = 512;         // intervals
  Spacing spacing = Spacing::uniform;
};

struct VariationalProblem {
  Mode mode;
  QuotientKind quotient;
  GridConfig grid;
};

/// Checks the problem invariants and fills in a default r_max.
VariationalProblem make_problem(QuotientKind q, Mode mode, GridConfig grid = {});

/// Continuum infimum, when known (full_hyup2 is only known at k = 0).
std::optional<double> continuum_target(const VariationalProblem& p);

/// The assembled quadratic forms of a problem.
struct DiscreteProblem {
  VariationalProblem problem;
  RadialFE fe;
  Eigen::SparseMatrix<double> A, B, C;
  /// Set when C couples every node (full_hyup2); C then holds only its local part.
  std::optional<Eigen::MatrixXd> C_dense;

  Eigen::VectorXd apply_C(const Eigen::VectorXd& x) const;
  double quotient(const Eigen::VectorXd& x) const;
  /// Grid values of the unknown (w for product problems, v otherwise).
  SampledProfile profile(const Eigen::VectorXd& x) const;
};

DiscreteProblem discretize(const VariationalProblem& p);

/// Discrete quotient of a function sampled at the grid nodes.
double discrete_quotient(const DiscreteProblem& d, const std::function<double(double)>& f);

struct MinimizeOptions {
  int max_iterations = 4000;
  int restarts = 5;
  double noise = 0.1;
  std::uint64_t seed = 0;
  double tolerance = 1e-13;  // relative decrease per iteration
  int workers = 1;
  /// Replaces the family initializer (grid values on the problem's grid, fixed nodes ignored).
  std::optional<Eigen::VectorXd> init;
};

struct MinimizationResult {
  VariationalProblem problem;
  double min_value;
  SampledProfile argmin;
  int iterations;
  bool converged;
  std::vector<double> history;
  double initial_value;
  int best_restart;
  std::optional<double> target;
};

/**
 * Preconditioned projected gradient descent with Armijo backtracking; C is
 * renormalized to 1 after every step. Budget exhaustion is reported through
 * converged = false with the best iterate; a collapsing C throws
 * degenerate_profile.
 */
MinimizationResult minimize_quotient(const VariationalProblem& p, const MinimizeOptions& opts = {});

struct OracleResult {
  double value;  // (min_t lambda_min(t A + B/t, C) / 2)^2
  double t_opt;
  int evaluations;
};

/// Independent check: the product infimum through single-form eigenproblems in t.
OracleResult eigen_oracle(const VariationalProblem& p);

/// Smallest eigenvalue of (K, C) by inverse iteration from x (updated in place).
double smallest_eigenvalue(const Eigen::SparseMatrix<double>& K,
                           const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_C, Eigen::VectorXd& x,
                           int max_iterations = 5000, double tolerance = 1e-14);

enum class CombinedQuotient { hup2, hyup2 };

std::string to_string(CombinedQuotient q);
CombinedQuotient combined_from_string(const std::string& name);

struct CombinedRow {
  int k;
  double per_mode_min;    // numerical C_{N,k}
  double per_mode_exact;  // continuum C_{N,k}
  double factor;          // Hardy correction
  double corrected;       // factor * per_mode_min
  Rational exact;         // factor * continuum, exactly
  bool complete;
  std::string failure;
};

struct CombinedBound {
  CombinedQuotient quotient;
  int dimension;
  int k_max;
  GridConfig grid;
  std::vector<CombinedRow> rows;
  double combined;  // min over complete rows
  int argmin_k;
  Rational exact_infimum;  // over the same k range
  ScanResult scan;         // the full exact scan for comparison
};

/// Correction factor (1 - 8k/(N+2k)^2) for hup2, 1/(1 + 4k/(N+2k-3)^2)^2 for hyup2 (1 at k = 0).
Rational correction_factor(CombinedQuotient q, int N, int k);

CombinedBound mode_combined_bound(CombinedQuotient q, int N, int k_max, GridConfig grid = {},
                                  const MinimizeOptions& opts = {});

struct ConjectureRow {
  int k;
  int M;
  double relaxed;   // product_hyup2 minimum times the correction factor
  double full;      // full_hyup2 minimum
  bool converged;
};

struct ConjectureReport {
  int dimension;
  int k_max;
  std::vector<int> ladder;
  std::vector<ConjectureRow> rows;
  double estimate;       // min over k of the full per-mode minima at the finest M
  int estimate_k;
  double relaxed_bound;  // min over k of the relaxed values at the finest M
  double conjectured;    // (N+1)^2/4
  double delta_disc;
  bool counterexample_candidate;
  std::optional<SampledProfile> candidate;  // w = v_k' of the best finest-grid trial
  int candidate_k;
};

/// Numerical evidence on the hyup2 constant below dimension 5; never a proof.
ConjectureReport explore_conjecture(int N, int k_max, const std::vector<int>& ladder = {128, 256, 512},
                                    GridConfig grid = {}, const MinimizeOptions& opts = {});

/// int u''^2 * int r^2 u'^2 / (int u'^2)^2 over the half-line for an even profile on the line.
double n1_quotient_check(const AnalyticProfile& u);

}  // namespace upsharp

#endif  // UPSHARP_MINIMIZE_HPP
