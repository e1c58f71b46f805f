#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghost/ext_rational.hpp"
#include "ghost/weightspace.hpp"

namespace ghost {

struct MuInvariants {
  long long mu0 = 1;
  long long mu02 = 0;
  long long mu03 = 0;
  long long c0 = 1;
};

/// Closed multiplicative formulas; must agree with the congruence counts
/// (the brute-force oracle lives in the tests).
MuInvariants mu_invariants(long long N);

/// Exact value of the dimension formula for S_k(Gamma_0(N)), any even k.
long long classical_dim(long long k, long long N);

/// Exact value of the p-new dimension formula at level Np, any even k.
long long classical_new_dim(long long k, long long N, long p);

struct PeriodDefect {
  long long period = 1;
  long long defect = 0;
};

/// A total quasi-linear function: base values on [n_lo, n_lo + period),
/// extended by f(n + period) = f(n) + defect.
struct QuasiLinearSpec {
  long long n_lo = 0;
  std::vector<long long> base;  // size = period
  long long period = 1;
  long long defect = 0;

  long long eval(long long n) const;
};

enum class ModelKind { Gamma0, QuasiLinear, Rhobar };

/// Serre-weight data for a rhobar component model.
struct RhobarSpec {
  long p = 5;
  long k_rbar = 2;        // in [2, p+1]
  bool split = false;
  long long m1 = 0, m2 = 0, m3 = 0;
  long twist = 0;         // t mod p-1
  bool experimental = false;  // required for p < 5
  std::optional<std::vector<long long>> base_window;  // d_t(0..p), length p+1
  std::optional<long long> dp_base;                   // d_{p,t}(0)
};

/// The pair (d, d^new) with the declared periods/defects for d, d^new,
/// d+d^new and d_p = 2d + d^new. Immutable after construction.
class DimensionModel {
 public:
  DimensionModel() = default;
  DimensionModel(GhostParams params, ModelKind kind, std::string description,
                 std::function<long long(long long)> d,
                 std::function<long long(long long)> dnew,
                 PeriodDefect pq_d, PeriodDefect pq_dnew,
                 PeriodDefect pq_dsum, PeriodDefect pq_dp);

  const GhostParams& params() const { return params_; }
  ModelKind kind() const { return kind_; }
  const std::string& description() const { return description_; }

  long long d(long long n) const { return d_(n); }
  long long dnew(long long n) const { return dnew_(n); }
  long long dsum(long long n) const { return d_(n) + dnew_(n); }
  long long dp(long long n) const { return 2 * d_(n) + dnew_(n); }

  const PeriodDefect& pq_d() const { return pq_d_; }
  const PeriodDefect& pq_dnew() const { return pq_dnew_; }
  const PeriodDefect& pq_dsum() const { return pq_dsum_; }
  const PeriodDefect& pq_dp() const { return pq_dp_; }

 private:
  GhostParams params_;
  ModelKind kind_ = ModelKind::Gamma0;
  std::string description_;
  std::function<long long(long long)> d_;
  std::function<long long(long long)> dnew_;
  PeriodDefect pq_d_, pq_dnew_, pq_dsum_, pq_dp_;
};

/// d(n) = classical_dim(k_n), dnew(n) = classical_new_dim(k_n); requires
/// p coprime to N, pN > 3 and k0 even in [0, delta).
DimensionModel build_gamma0_model(long p, long long N, long long k0);

/// Periodic extensions of the given windows; (G) demands defect(d) > 0 and
/// defect(d) + defect(dnew) > 0 on a common period.
DimensionModel build_quasilinear_model(const GhostParams& params, const QuasiLinearSpec& d_spec,
                                       const QuasiLinearSpec& dnew_spec);

/// S(k, t) for 2 <= k <= p+1: the four cases of the base proposition, plus
/// the forced S(p+1, p-k_rbar) entry in the split k_rbar = p-1 case.
std::map<std::pair<long, long>, long long> rhobar_base_table(const RhobarSpec& spec);

/// Closed-form defect Q_{d_t} (case analysis on split / k_rbar mod p-1).
long long rhobar_defect(const RhobarSpec& spec);

/// The defect recomputed from the base table by the weight-cycle recursion
/// sum; equals rhobar_defect for every valid spec.
long long rhobar_defect_recursion(const RhobarSpec& spec);

/// Derived d_{p,t}(0) (available for non-split specs with even k_rbar).
long long rhobar_dp_base(const RhobarSpec& spec);

/// Derived base window d_t(0..p) via the unrolled weight descent
/// (non-split, even k_rbar only; the odd case lands on an undefined
/// recursion step and needs an explicit window).
std::vector<long long> rhobar_base_window(const RhobarSpec& spec);

DimensionModel build_rhobar_model(const RhobarSpec& spec);

struct AxiomReport {
  bool nd_d = false, nd_dsum = false, nd_dp = false;
  bool ql_d = false, ql_dnew = false, ql_dsum = false, ql_dp = false;
  bool growth = false;  // defect(d) > 0 and defect(d)+defect(dnew) > 0
  Rational A, B;
  bool b_is_pminus1_a = false;
  bool window_covers_periods = false;
  std::vector<std::string> failures;

  bool all_pass() const;
};

/// (ND) on the window, the declared quasi-linearity identities, and the
/// linear-growth constants A = Q_d/P_d, B = Q_dnew/P_dnew.
AxiomReport verify_axioms(const DimensionModel& model, long long n_lo, long long n_hi);

/// (A, B) as exact rationals.
std::pair<Rational, Rational> growth_constants(const DimensionModel& model);

}  // namespace ghost
