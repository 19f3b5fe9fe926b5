#include <catch2/catch_amalgamated.hpp>

#include "w22hv/characters.hpp"

using namespace w22hv;

namespace {

// Independent oracle: partition numbers by Euler's pentagonal recurrence.
std::vector<long long> partitions_pentagonal(int N) {
  std::vector<long long> p(static_cast<size_t>(N) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      long long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= n) p[n] += sign * p[n - g1];
      if (g2 <= n) p[n] += sign * p[n - g2];
    }
  }
  return p;
}

// Independent oracle: coefficients of prod_{k>=1} (1-q^k)^{-2} by repeated
// geometric-series multiplication.
std::vector<long long> double_eta_inverse(int N) {
  std::vector<long long> s(static_cast<size_t>(N) + 1, 0);
  s[0] = 1;
  for (int k = 1; k <= N; ++k)
    for (int rep = 0; rep < 2; ++rep)
      for (int n = k; n <= N; ++n) s[n] += s[n - k];  // multiply by 1/(1-q^k)
  return s;
}

}  // namespace

TEST_CASE("partition numbers agree with the pentagonal recurrence") {
  CHECK(partition_table(20) == partitions_pentagonal(20));
}

TEST_CASE("P2 values 0..8") {
  std::vector<long long> expected{1, 2, 5, 10, 20, 36, 65, 110, 185};
  CHECK(p2_table(8) == expected);
  CHECK(partition_p2(0) == 1);
  CHECK(partition_p2(2) == 5);
  CHECK(partition_p2(5) == 36);
}

TEST_CASE("P2 equals the double eta-inverse product expansion") {
  CHECK(p2_table(14) == double_eta_inverse(14));
}

TEST_CASE("quotient and atypical character coefficients") {
  // (1-q) sum P2 q^n
  CHECK(quotient_dims(1, 5) == std::vector<long long>{1, 1, 3, 5, 10, 16});
  // (1-q)^2 sum P2 q^n
  CHECK(atypical_irr_dims(1, 1, 5) == std::vector<long long>{1, 0, 2, 2, 5, 6});
  // p = 2 quotient
  CHECK(quotient_dims(2, 5) == std::vector<long long>{1, 2, 4, 8, 15, 26});
}

TEST_CASE("telescoping identity: sum_i q^{ip} (1-q^p) = 1 as a truncated series") {
  const int N = 8;
  for (int p : {1, 2, 3}) {
    std::vector<long long> acc(static_cast<size_t>(N) + 1, 0);
    for (int i = 0; i * p <= N; ++i) {
      // q^{ip} (1 - q^p)
      acc[i * p] += 1;
      if (i * p + p <= N) acc[i * p + p] -= 1;
    }
    CHECK(acc[0] == 1);
    for (int n = 1; n <= N; ++n) CHECK(acc[n] == 0);
  }
}
