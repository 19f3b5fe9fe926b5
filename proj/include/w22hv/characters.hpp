#pragma once

#include <stdexcept>
#include <vector>

namespace w22hv {

/// P(0..N), the ordinary partition numbers, by bounded-part counting.
inline std::vector<long long> partition_table(int N) {
  if (N < 0) throw std::invalid_argument("partition_table: negative bound");
  std::vector<long long> p(static_cast<size_t>(N) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int n = part; n <= N; ++n) p[n] += p[n - part];
  return p;
}

/// P2(0..N) with P2(n) = sum_i P(n-i) P(i), the two-colored partition
/// numbers; these are the graded dimensions of both Verma modules in scope.
inline std::vector<long long> p2_table(int N) {
  auto p = partition_table(N);
  std::vector<long long> out(static_cast<size_t>(N) + 1, 0);
  for (int n = 0; n <= N; ++n)
    for (int i = 0; i <= n; ++i) out[n] += p[n - i] * p[i];
  return out;
}

inline long long partition_p2(int n) { return p2_table(n)[n]; }

/// Coefficients of (1 - q^p) * series, truncated to the input length.
inline std::vector<long long> mul_one_minus_qp(std::vector<long long> s, int p) {
  if (p <= 0) throw std::invalid_argument("mul_one_minus_qp: p must be positive");
  for (int n = static_cast<int>(s.size()) - 1; n >= p; --n) s[n] -= s[n - p];
  return s;
}

inline std::vector<long long> verma_dims(int N) { return p2_table(N); }

/// Graded dimensions of the quotient of a Verma module by the submodule
/// generated at level p: coefficients of (1-q^p) sum P2(n) q^n.
inline std::vector<long long> quotient_dims(int p, int N) {
  return mul_one_minus_qp(p2_table(N), p);
}

/// Graded dimensions of the atypical irreducible W(2,2) module:
/// coefficients of (1-q^p)(1-q^{rp}) sum P2(n) q^n.
inline std::vector<long long> atypical_irr_dims(int p, int r, int N) {
  return mul_one_minus_qp(mul_one_minus_qp(p2_table(N), p), r * p);
}

}  // namespace w22hv
