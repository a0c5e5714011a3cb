#include "upsharp/constants.hpp"

#include <stdexcept>

#include "upsharp/errors.hpp"

namespace upsharp {

std::string to_string(PrincipleId p) {
  switch (p) {
    case PrincipleId::hup: return "hup";
    case PrincipleId::hyup: return "hyup";
    case PrincipleId::hup2: return "hup2";
    case PrincipleId::hyup2: return "hyup2";
    case PrincipleId::hup2_radial: return "hup2_radial";
    case PrincipleId::hyup2_radial: return "hyup2_radial";
  }
  return "?";
}

PrincipleId principle_from_string(const std::string& name) {
  for (auto p : {PrincipleId::hup, PrincipleId::hyup, PrincipleId::hup2, PrincipleId::hyup2,
                 PrincipleId::hup2_radial, PrincipleId::hyup2_radial})
    if (to_string(p) == name) return p;
  throw domain_error("unknown principle '" + name + "'");
}

std::string to_string(ProofStatus s) { return s == ProofStatus::proved ? "proved" : "conjectural"; }

SharpConstant sharp_constant(PrincipleId p, int N) {
  if (N < 1) throw domain_error("dimension must be >= 1");
  auto sq4 = [](int m) { return Rational(static_cast<int128>(m) * m, 4); };
  switch (p) {
    case PrincipleId::hup: return {p, N, sq4(N), ProofStatus::proved};
    case PrincipleId::hyup:
      if (N < 2) throw domain_error("hyup needs N >= 2");
      return {p, N, sq4(N - 1), ProofStatus::proved};
    case PrincipleId::hup2:
    case PrincipleId::hup2_radial: return {p, N, sq4(N + 2), ProofStatus::proved};
    case PrincipleId::hyup2:
      if (N < 2) throw domain_error("hyup2 needs N >= 2 (proved for N >= 5, conjectured for 2..4)");
      return {p, N, sq4(N + 1), N >= 5 ? ProofStatus::proved : ProofStatus::conjectural};
    case PrincipleId::hyup2_radial:
      if (N < 2) throw domain_error("hyup2_radial needs N >= 2");
      return {p, N, sq4(N + 1), ProofStatus::proved};
  }
  throw domain_error("unknown principle");
}

Rational lemma33_S_expanded(int N, int k) {
  const int128 t = N + 2 * k;
  return Rational(static_cast<int128>(N) * N, 4) + Rational(N - 3) + Rational(static_cast<std::int64_t>(N) * k) +
         Rational(static_cast<std::int64_t>(k) * k) + Rational(4 * static_cast<int128>(N - 1), t) +
         Rational(4 * static_cast<int128>(N), t * t);
}

Rational lemma33_S(int N, int k) {
  if (N < 2 || k < 0) throw domain_error("lemma33_S needs N >= 2 and k >= 0");
  const int128 t = N + 2 * k;
  const Rational s = (Rational(1) - Rational(8 * static_cast<int128>(k), t * t)) * Rational((t + 2) * (t + 2), 4);
  if (s != lemma33_S_expanded(N, k)) throw std::logic_error("lemma33_S: factored and expanded forms differ");
  return s;
}

int128 lemma33_h(int N, int128 t) { return t * t * t * t - 8 * static_cast<int128>(N - 1) * t - 16 * N; }

Rational lemma34_f(int N, int k) {
  if (N < 2 || k < 0) throw domain_error("lemma34_f needs N >= 2 and k >= 0");
  const int128 s = N + 2 * k + 1;
  const Rational lead(s * s, 4);
  if (k == 0) return lead;
  const int128 t = N + 2 * k - 3;
  const int128 den = t * t + 4 * k;
  if (den == 0) throw pole_error("lemma34_f: (N+2k-3)^2 + 4k vanishes");
  return lead * Rational(t * t * t * t, den * den);
}

int128 lemma34_q(int N, int128 t) { return t * t * t + 4 * t * t + (26 - 6 * static_cast<int128>(N)) * t + 48 - 16 * N; }

std::string to_string(ScanFormula f) { return f == ScanFormula::lemma33_S ? "lemma33_S" : "lemma34_f"; }

ScanFormula scan_formula_from_string(const std::string& name) {
  if (name == "lemma33_S") return ScanFormula::lemma33_S;
  if (name == "lemma34_f") return ScanFormula::lemma34_f;
  throw domain_error("unknown scan formula '" + name + "'");
}

ScanResult scan_infimum(ScanFormula f, int N, int k_max) {
  if (k_max < 8) throw domain_error("scan_infimum needs k_max >= 8");
  if (N < 2) throw domain_error("scan_infimum needs N >= 2");
  ScanResult r{f, N, k_max, {}, 0, Rational(0), Rational(0), false, false, "", true, -1};
  const bool s33 = f == ScanFormula::lemma33_S;
  for (int k = 0; k <= k_max; ++k) r.values.push_back(s33 ? lemma33_S(N, k) : lemma34_f(N, k));
  for (int k = 1; k <= k_max; ++k)
    if (r.values[static_cast<std::size_t>(k)] < r.values[static_cast<std::size_t>(r.argmin)]) r.argmin = k;
  r.infimum = r.values[static_cast<std::size_t>(r.argmin)];
  r.predicted = Rational(static_cast<int128>(N + (s33 ? 2 : 1)) * (N + (s33 ? 2 : 1)), 4);
  r.within_lemma_range = s33 ? N >= 2 : N >= 5;
  for (int k = 1; k < k_max; ++k) {
    if (r.values[static_cast<std::size_t>(k + 1)] < r.values[static_cast<std::size_t>(k)]) {
      r.monotone_from_k1 = false;
      r.first_decrease = k;
      break;
    }
  }

  const int128 t_end = s33 ? N + 2 * k_max : N + 2 * k_max - 3;
  if (s33) {
    // h increases in t (dh/dt = 4t^3 - 8(N-1) > 0 for t >= N >= 2), so h(t_end) > 0 keeps S increasing.
    const int128 h = lemma33_h(N, t_end);
    const int128 dh = 4 * t_end * t_end * t_end - 8 * static_cast<int128>(N - 1);
    r.tail_certified = h > 0 && dh > 0;
    r.certificate = "h(N,t)=" + to_string(h) + " at t=" + to_string(t_end);
  } else {
    // q'' = 6t + 8 > 0, so q > 0 and q' > 0 at t_end keep q positive and f increasing beyond.
    const int128 q = lemma34_q(N, t_end);
    const int128 dq = 3 * t_end * t_end + 8 * t_end + 26 - 6 * static_cast<int128>(N);
    r.tail_certified = q > 0 && dq > 0;
    r.certificate = "q(N,t)=" + to_string(q) + " at t=" + to_string(t_end);
  }
  if (!r.tail_certified)
    throw inconclusive_scan(to_string(f) + " N=" + std::to_string(N) + ": tail certificate fails (" + r.certificate + ")");
  return r;
}

}  // namespace upsharp
