#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghost/ext_rational.hpp"
#include "ghost/ghost_series.hpp"
#include "ghost/newton.hpp"

namespace ghost {

struct DistributionReport {
  long long n = 0;
  long long k = 0;
  Rational normalizer;
  Rational mass_at_half, mass_low, mass_high;
  Rational ks_low, ks_high;
  Rational limit_low, limit_half, limit_high;  // A/(2A+B), B/(2A+B), A/(2A+B)
};

struct GouveaReport {
  long long n = 0;
  long long k = 0;
  Rational ratio_old;        // s_{d(n)}/k_n
  Rational ratio_classical;  // s_{d_p(n)}/k_n
  Rational limit_old, limit_classical;
  bool buzzard_bound = false;  // s_{d(n)} <= (k_n - 1)/(p+1)
};

struct SemistableReport {
  long long n = 0;
  bool vacuous = false;  // dnew(n) = 0
  bool break_at_d = false, break_at_dsum = false, no_interior_vertex = false;
  Rational slope;      // (y_{d+dnew} - y_d)/dnew
  Rational predicted;  // p/(p-1)^2 * B^2/(2A(A+B)) * k_n
  Rational deviation;
  bool passed() const { return vacuous || (break_at_d && break_at_dsum && no_interior_vertex); }
};

struct APParameters {
  long long Q = 0;    // lcm of defects, Q_dp halved when even
  long long Q_r = 0;  // p^r Q (p=2 branches per the defining equation)
  long r = 0;         // floor(alpha_kappa)
  Rational inner;     // P_d/Q_d - 4 P_dp/Q_dp + P_dsum/Q_dsum
  Rational common_difference;
};

struct APReport {
  APParameters params;
  long long i_lo = 0, i_hi = 0;  // shift identity checked on (i_lo, i_hi]
  struct Violation {
    long long i;
    Rational got, expected;
  };
  std::vector<Violation> violations;
  bool verified = false;
};

struct CompareReport {
  long long compared = 0;
  long long computed_size = 0, external_size = 0;
  long long first_mismatch = -1;  // index into the compared prefix, -1 = none
  bool all_match = false;
  std::string note;
};

/// s~_i = s_i / (p/(p-1)^2 * B^2/(A(A+B)) * k_n) for 1 <= i <= d_p(n).
std::vector<Rational> normalized_slopes(const GhostSeries& series, long long n,
                                        const SlopeOptions& opts = {});

DistributionReport distribution_report(const GhostSeries& series, long long n,
                                       const SlopeOptions& opts = {});

GouveaReport gouvea_check(const GhostSeries& series, long long n, const SlopeOptions& opts = {});

SemistableReport semistable_check(const GhostSeries& series, long long n,
                                  const SlopeOptions& opts = {});

/// (Q, Q_r, r, D) of the progression theorem at a Boundary or NearInteger
/// weight; rejects Integer weights.
APParameters ap_parameters(const DimensionModel& model, const WeightPoint& kappa);

/// Checks s_{i+Q_r} - s_i = D exactly for Q_r < i <= count - Q_r.
APReport ap_verify(const SlopeSequence& slopes, const APParameters& params);

/// Index-wise exact comparison against an external (sorted) slope list.
CompareReport compare_slopes(const std::vector<Rational>& computed, std::vector<Rational> external);

/// Distinctness note for the w-adic slopes (reported, never asserted).
struct WadicDistinctReport {
  long long count = 0;
  long long distinct = 0;
  bool all_distinct = false;
};
WadicDistinctReport wadic_distinct_report(const GhostSeries& series, long long count,
                                          const SlopeOptions& opts = {});

}  // namespace ghost
