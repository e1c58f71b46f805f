#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "ghost/dimension_models.hpp"
#include "ghost/ext_rational.hpp"
#include "ghost/weightspace.hpp"

namespace ghost {

/// One ghost coefficient g_i in factored form: the zero multiset over the
/// consecutive run [lz, hz] with the palindromic multiplicity pattern.
struct GhostCoefficient {
  long long index = 0;
  std::vector<std::pair<long long, long long>> zeros;  // (n, multiplicity)
  long long degree = 0;
  bool empty() const { return zeros.empty(); }
  long long lz() const {
    if (zeros.empty()) throw std::logic_error("lz of the empty coefficient");
    return zeros.front().first;
  }
  long long hz() const {
    if (zeros.empty()) throw std::logic_error("hz of the empty coefficient");
    return zeros.back().first;
  }
};

/// Zero/pole ranges of Delta_i = g_i / g_{i-1} split into the coprime monic
/// parts Delta_i^+ / Delta_i^-.
struct DeltaData {
  long long index = 1;
  bool plus_nonempty = false, minus_nonempty = false;
  long long plus_lz = 0, plus_hz = 0;
  long long minus_lz = 0, minus_hz = 0;
  long long lambda_plus = 0, lambda_minus = 0;
  long long lambda() const { return lambda_plus - lambda_minus; }
};

/// Ghost series attached to a dimension model. Coefficients are memoized;
/// the cache only ever gains entries, so concurrent readers are safe.
class GhostSeries {
 public:
  explicit GhostSeries(DimensionModel model);

  const DimensionModel& model() const { return model_; }
  const GhostParams& params() const { return model_.params(); }

  std::shared_ptr<const GhostCoefficient> coefficient(long long i) const;
  long long degree(long long i) const;
  DeltaData delta_data(long long i) const;

  /// v_p(g_i(w_kappa)) as a sum of multiplicity-weighted profile values.
  ExtRational eval_valuation(long long i, const WeightPoint& kappa) const;

  /// Independent check at integer weights: big-integer evaluation of the
  /// factored product via exact_weight_coordinate.
  ExtRational exact_eval_oracle(long long i, long long k) const;

  /// v_p(g_i(w_kappa)) - v_p(g_{i-1}(w_kappa)); throws when the i-1 point
  /// is infinite (inside the semistable range).
  ExtRational delta_slope(long long i, const WeightPoint& kappa) const;

  /// v_p of Delta_i at w_{k_n} with the simple zero/pole at n removed.
  Rational delta_star(long long i, long long n) const;

  /// sup{n : d(n) < bound} / inf{n : f(n) >= bound} under (ND) + (G).
  long long hz_g(long long i) const;
  long long lz_g(long long i) const;

  /// lcm modulus for the lambda-shift identity (halved Q_dp when even).
  long long lambda_shift_modulus() const;
  /// Exact increment of lambda_i over one lambda_shift_modulus step.
  Rational lambda_shift_inner() const;

 private:
  DimensionModel model_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<long long, std::shared_ptr<const GhostCoefficient>> cache_;
};

}  // namespace ghost
