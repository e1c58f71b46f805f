#pragma once

#include <random>
#include <utility>
#include <vector>

#include "ghost/ext_rational.hpp"
#include "ghost/newton.hpp"

namespace ghost_test {

using ghost::BigInt;
using ghost::ExtRational;
using ghost::Rational;

// Quadratic lower-hull oracle: from the leftmost point repeatedly walk to the
// point of minimal slope (ties resolved by largest x, absorbing collinear runs).
inline std::vector<std::pair<long long, Rational>> quadratic_hull_oracle(
    const std::vector<std::pair<long long, ExtRational>>& points) {
  std::vector<std::pair<long long, Rational>> finite;
  for (const auto& [x, y] : points)
    if (y.is_finite()) finite.push_back({x, y.value()});
  std::sort(finite.begin(), finite.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // keep min y per x
  std::vector<std::pair<long long, Rational>> pts;
  for (const auto& p : finite) {
    if (!pts.empty() && pts.back().first == p.first) {
      if (p.second < pts.back().second) pts.back().second = p.second;
    } else {
      pts.push_back(p);
    }
  }
  std::vector<std::pair<long long, Rational>> hull;
  if (pts.empty()) return hull;
  size_t cur = 0;
  hull.push_back(pts[0]);
  while (cur + 1 < pts.size()) {
    size_t best = cur + 1;
    Rational best_slope =
        (pts[best].second - pts[cur].second) / ghost::make_rational(pts[best].first - pts[cur].first);
    for (size_t j = cur + 2; j < pts.size(); ++j) {
      Rational s =
          (pts[j].second - pts[cur].second) / ghost::make_rational(pts[j].first - pts[cur].first);
      if (s < best_slope || (s == best_slope && pts[j].first > pts[best].first)) {
        best_slope = s;
        best = j;
      }
    }
    hull.push_back(pts[best]);
    cur = best;
  }
  return hull;
}

// Congruence-counting oracle for the level invariants.
struct BruteMu {
  long long mu02 = 0, mu03 = 0, c0 = 0;
};

inline BruteMu brute_mu(long long N) {
  BruteMu b;
  if (N == 1) {
    // x = 0 satisfies both congruences mod 1; one divisor
    return {1, 1, 1};
  }
  for (long long x = 0; x < N; ++x) {
    if ((x * x + 1) % N == 0) ++b.mu02;
    if ((x * x + x + 1) % N == 0) ++b.mu03;
  }
  for (long long d = 1; d <= N; ++d) {
    if (N % d != 0) continue;
    long long g = std::gcd(d, N / d);
    for (long long a = 1; a <= g; ++a)
      if (std::gcd(a, g) == 1) ++b.c0;
  }
  return b;
}

inline std::mt19937_64 seeded_rng(unsigned long long seed = 0x67686f7374ULL) {
  return std::mt19937_64(seed);
}

}  // namespace ghost_test
