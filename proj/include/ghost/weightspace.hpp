#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ghost/ext_rational.hpp"

namespace ghost {

/// The arithmetic stage: prime context plus the component of weight space.
/// Weights on the component are k_n = k_base + n*delta.
struct GhostParams {
  long p = 0;
  long q = 0;          // p if p odd, 4 if p = 2
  long delta = 0;      // p-1 if p odd, 2 if p = 2
  long v0 = 0;         // 1 if p odd, 3 if p = 2
  long gamma = 0;      // 1+p if p odd, 5 if p = 2
  long long k_base = 0;
  long component = 0;  // k_base mod delta, in [0, delta)

  GhostParams() = default;
  GhostParams(long p_, long long k_base_);

  long long k_of(long long n) const { return k_base + n * delta; }
  bool on_component(long long k) const {
    long long r = (k - component) % delta;
    return r == 0;
  }
  void require_on_component(long long k) const;
};

struct IntegerWeight {
  long long k;
};
struct NearIntegerWeight {
  long long k_plus;
  Rational alpha;  // alpha >= v0
};
struct BoundaryWeight {
  Rational v;  // 0 < v < v0
};

using WeightPoint = std::variant<IntegerWeight, NearIntegerWeight, BoundaryWeight>;

WeightPoint make_integer_weight(const GhostParams& params, long long k);
WeightPoint make_near_integer_weight(const GhostParams& params, long long k_plus, const Rational& alpha);
WeightPoint make_boundary_weight(const GhostParams& params, const Rational& v);

std::string weight_to_string(const WeightPoint& w);
WeightPoint parse_weight(const GhostParams& params, const std::string& text);

/// v_p(w_k - w_k2) = 1 + v_p(2) + v_p(k - k2); +infinity when k = k2.
ExtRational weight_diff_valuation(const GhostParams& params, long long k, long long k2);

/// The coordinate gamma^k - 1 (gamma^{k-1} - 1 on the odd p=2 component),
/// exact: a big integer for nonnegative exponent, a rational otherwise.
/// Independent oracle for weight_diff_valuation.
Rational exact_weight_coordinate(const GhostParams& params, long long k);

/// v_p(w_kappa - w_{k_n}) for each supported weight point.
ExtRational weight_valuation_profile(const GhostParams& params, const WeightPoint& kappa, long long n);

/// Smallest possible value of the profile over all n (per-factor lower bound
/// used by slope certification): v for Boundary, v0 otherwise.
Rational profile_lower_bound(const GhostParams& params, const WeightPoint& kappa);

}  // namespace ghost
