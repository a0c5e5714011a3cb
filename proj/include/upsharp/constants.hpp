#ifndef UPSHARP_CONSTANTS_HPP
#define UPSHARP_CONSTANTS_HPP

#include <string>
#include <vector>

#include "upsharp/rational.hpp"

namespace upsharp {

enum class PrincipleId { hup, hyup, hup2, hyup2, hup2_radial, hyup2_radial };

std::string to_string(PrincipleId p);
PrincipleId principle_from_string(const std::string& name);

enum class ProofStatus { proved, conjectural };

std::string to_string(ProofStatus s);

struct SharpConstant {
  PrincipleId principle;
  int dimension;
  Rational value;
  ProofStatus status;
};

/**
 * Sharp constant of a principle in dimension N.
 *
 *   hup          N^2/4       N >= 1
 *   hyup         (N-1)^2/4   N >= 2
 *   hup2         (N+2)^2/4   N >= 1
 *   hyup2        (N+1)^2/4   N >= 5 proved, N in {2,3,4} conjectural
 *   hup2_radial  (N+2)^2/4   N >= 1
 *   hyup2_radial (N+1)^2/4   N >= 2
 */
SharpConstant sharp_constant(PrincipleId p, int N);

/// (1 - 8k/(N+2k)^2) (N+2k+2)^2/4; checked against the expanded form.
Rational lemma33_S(int N, int k);
/// N^2/4 + N - 3 + Nk + k^2 + 4(N-1)/(N+2k) + 4N/(N+2k)^2
Rational lemma33_S_expanded(int N, int k);
/// t^4 - 8(N-1)t - 16N, the numerator of dS/dk at t = N + 2k.
int128 lemma33_h(int N, int128 t);

/**
 * ((N+2k+1)^2/4) t^4/(t^2+4k)^2 with t = N+2k-3. At k = 0 the second factor
 * is taken as 1, which also covers the 0/0 case N = 3.
 */
Rational lemma34_f(int N, int k);
/// t^3 + 4t^2 + (26-6N)t + 48 - 16N; its sign is that of d/dk f(N,k) for k >= 1.
int128 lemma34_q(int N, int128 t);

enum class ScanFormula { lemma33_S, lemma34_f };

std::string to_string(ScanFormula f);
ScanFormula scan_formula_from_string(const std::string& name);

struct ScanResult {
  ScanFormula formula;
  int dimension;
  int k_max;
  std::vector<Rational> values;  // k = 0..k_max
  int argmin;
  Rational infimum;
  /// Predicted value (N+2)^2/4 or (N+1)^2/4.
  Rational predicted;
  /// N lies in the range where the lemma asserts the infimum sits at k = 0.
  bool within_lemma_range;
  /// Derivative-sign certificate at k_max; growth beyond the scanned range.
  bool tail_certified;
  std::string certificate;
  /// lemma34_f only: f(N,k+1) >= f(N,k) for every scanned k >= 1.
  bool monotone_from_k1;
  /// First k >= 1 where monotonicity fails (-1 if none).
  int first_decrease;
};

/// Exact scan of k = 0..k_max; throws inconclusive_scan if the tail is not certified.
ScanResult scan_infimum(ScanFormula f, int N, int k_max = 64);

}  // namespace upsharp

#endif  // UPSHARP_CONSTANTS_HPP
