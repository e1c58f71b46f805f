#include "ghost/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "ghost/valuation.hpp"

namespace ghost {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Sup distance between the empirical CDF of sorted values and the uniform
// CDF on [lo, hi], values outside clamped.
Rational ks_distance(const std::vector<Rational>& sorted_vals, const Rational& lo, const Rational& hi) {
  if (sorted_vals.empty()) return Rational(0);
  long long m = static_cast<long long>(sorted_vals.size());
  Rational best(0);
  Rational span = hi - lo;
  for (long long i = 0; i < m; ++i) {
    Rational F = (sorted_vals[i] - lo) / span;
    if (F < 0) F = 0;
    if (F > 1) F = 1;
    best = std::max(best, abs_q(make_rational(i + 1, m) - F));
    best = std::max(best, abs_q(make_rational(i, m) - F));
  }
  best.canonicalize();
  return best;
}

Rational classical_normalizer(const DimensionModel& model, long long kn) {
  auto [A, B] = growth_constants(model);
  long p = model.params().p;
  Rational c = Rational(p) / Rational((p - 1) * (p - 1)) * B * B / (A * (A + B));
  return c * to_bigint(kn);
}

}  // namespace

std::vector<Rational> normalized_slopes(const GhostSeries& series, long long n,
                                        const SlopeOptions& opts) {
  auto [A, B] = growth_constants(series.model());
  if (A <= 0 || B <= 0) throw std::invalid_argument("(LG) requires A, B > 0");
  long long dpn = series.model().dp(n);
  if (dpn < 1) return {};
  long long kn = series.params().k_of(n);
  WeightPoint w = make_integer_weight(series.params(), kn);
  SlopeSequence seq = ghost_slopes(series, w, dpn, opts);
  Rational norm = classical_normalizer(series.model(), kn);
  std::vector<Rational> out;
  out.reserve(seq.slopes.size());
  for (const auto& s : seq.slopes) {
    Rational t = s / norm;
    t.canonicalize();
    out.push_back(t);
  }
  return out;
}

DistributionReport distribution_report(const GhostSeries& series, long long n,
                                       const SlopeOptions& opts) {
  const DimensionModel& model = series.model();
  long long dn = model.d(n), dnewn = model.dnew(n), dpn = model.dp(n);
  if (dpn < 1) throw std::invalid_argument("distribution needs d_p(n) >= 1");
  if (dn < 0 || dnewn < 0)
    throw std::invalid_argument("distribution needs nonnegative dimensions at n");
  auto [A, B] = growth_constants(model);
  DistributionReport r;
  r.n = n;
  r.k = series.params().k_of(n);
  r.normalizer = classical_normalizer(model, r.k);
  r.mass_at_half = make_rational(dnewn, dpn);
  r.mass_low = make_rational(dn, dpn);
  r.mass_high = make_rational(dpn - dn - dnewn, dpn);
  Rational denom = 2 * A + B;
  r.limit_low = A / denom;
  r.limit_half = B / denom;
  r.limit_high = A / denom;

  std::vector<Rational> st = normalized_slopes(series, n, opts);
  if (static_cast<long long>(st.size()) != dpn)
    throw std::runtime_error("distribution: slope sequence shorter than d_p(n)");
  std::vector<Rational> low(st.begin(), st.begin() + dn);
  std::vector<Rational> high(st.begin() + dn + dnewn, st.end());
  std::sort(low.begin(), low.end());
  std::sort(high.begin(), high.end());
  r.ks_low = ks_distance(low, Rational(0), A / denom);
  r.ks_high = ks_distance(high, (A + B) / denom, Rational(1));
  return r;
}

GouveaReport gouvea_check(const GhostSeries& series, long long n, const SlopeOptions& opts) {
  const DimensionModel& model = series.model();
  long long dn = model.d(n), dpn = model.dp(n);
  if (dn < 1) throw std::invalid_argument("gouvea check needs d(n) >= 1");
  if (dpn < dn) throw std::invalid_argument("gouvea check needs d_p(n) >= d(n)");
  GouveaReport r;
  r.n = n;
  r.k = series.params().k_of(n);
  WeightPoint w = make_integer_weight(series.params(), r.k);
  SlopeSequence seq = ghost_slopes(series, w, dpn, opts);
  long p = series.params().p;
  r.ratio_old = seq.slopes[dn - 1] / make_rational(r.k);
  r.ratio_classical = seq.slopes[dpn - 1] / make_rational(r.k);
  r.ratio_old.canonicalize();
  r.ratio_classical.canonicalize();
  auto [A, B] = growth_constants(model);
  Rational pfac = Rational(p) / Rational((p - 1) * (p - 1));
  r.limit_old = pfac * B * B / ((A + B) * (2 * A + B));
  r.limit_classical = pfac * B * B / (A * (A + B));
  r.buzzard_bound = seq.slopes[dn - 1] <= make_rational(r.k - 1, p + 1);
  return r;
}

SemistableReport semistable_check(const GhostSeries& series, long long n, const SlopeOptions& opts) {
  const DimensionModel& model = series.model();
  long long dn = model.d(n), dnewn = model.dnew(n), dsn = model.dsum(n);
  SemistableReport r;
  r.n = n;
  if (dnewn < 1) {
    r.vacuous = true;
    return r;
  }
  if (dn < 0) throw std::invalid_argument("semistable check needs d(n) >= 0");
  long long kn = series.params().k_of(n);
  WeightPoint w = make_integer_weight(series.params(), kn);
  SlopeSequence seq = ghost_slopes(series, w, dsn + 1, opts);
  if (!seq.certified) throw std::runtime_error("semistable check: slopes not certified");
  const auto& s = seq.slopes;
  // A breakpoint at index x means the slope changes across position x.
  r.break_at_d = (dn == 0) || (dn >= 1 && s[dn] > s[dn - 1]);
  r.break_at_dsum = s[dsn] > s[dsn - 1];
  r.no_interior_vertex = true;
  for (long long i = dn + 1; i < dsn; ++i)
    if (s[i] != s[dn]) r.no_interior_vertex = false;

  ExtRational yd = series.eval_valuation(dn, w);
  ExtRational yds = series.eval_valuation(dsn, w);
  if (yd.is_infinite() || yds.is_infinite())
    throw std::logic_error("semistable endpoints must be finite");
  r.slope = (yds.value() - yd.value()) / make_rational(dnewn);
  r.slope.canonicalize();
  auto [A, B] = growth_constants(model);
  long p = series.params().p;
  r.predicted = Rational(p) / Rational((p - 1) * (p - 1)) * B * B / (2 * A * (A + B)) * to_bigint(kn);
  r.predicted.canonicalize();
  r.deviation = abs_q(r.slope - r.predicted);
  return r;
}

APParameters ap_parameters(const DimensionModel& model, const WeightPoint& kappa) {
  if (std::holds_alternative<IntegerWeight>(kappa))
    throw std::invalid_argument(
        "theorem does not apply at w_kappa in Z_p with v >= v0 (integer weight)");
  const GhostParams& params = model.params();
  long p = params.p;

  long long qd = model.pq_d().defect;
  long long qdp = model.pq_dp().defect;
  long long qds = model.pq_dsum().defect;
  long long qdp_eff = (qdp % 2 == 0) ? qdp / 2 : qdp;  // optimal modulus when even
  APParameters out;
  out.Q = lcm_ll(lcm_ll(qd, qdp_eff), qds);
  out.inner = make_rational(model.pq_d().period, model.pq_d().defect) -
              Rational(4) * make_rational(model.pq_dp().period, model.pq_dp().defect) +
              make_rational(model.pq_dsum().period, model.pq_dsum().defect);
  out.inner.canonicalize();

  Rational alpha;
  if (const auto* bw = std::get_if<BoundaryWeight>(&kappa)) {
    alpha = bw->v;  // halo case: r < v0, no p-power blowup
  } else {
    alpha = std::get<NearIntegerWeight>(kappa).alpha;
  }
  // r = floor(alpha)
  BigInt rfloor = alpha.get_num() / alpha.get_den();
  if (Rational(rfloor) > alpha) rfloor -= 1;
  out.r = static_cast<long>(rfloor.get_si());

  long e;  // Q_r = p^e Q
  if (p != 2)
    e = std::max(0L, out.r);
  else
    e = (out.r < params.v0) ? 0 : out.r - 2;
  long long qr = out.Q;
  for (long i = 0; i < e; ++i) {
    if (qr > (1LL << 60) / p) throw std::overflow_error("Q_r too large to verify");
    qr *= p;
  }
  out.Q_r = qr;

  Rational sum = alpha;
  for (long v = params.v0; v <= out.r; ++v) {
    long long pw = 1;
    for (long i = 0; i < out.r - v; ++i) pw *= p;
    sum += make_rational((p - 1) * pw * v);
  }
  out.common_difference = make_rational(out.Q) * out.inner * sum;
  out.common_difference.canonicalize();
  return out;
}

APReport ap_verify(const SlopeSequence& slopes, const APParameters& params) {
  if (!slopes.certified) throw std::invalid_argument("uncertified input");
  long long count = static_cast<long long>(slopes.slopes.size());
  if (count < 3 * params.Q_r)
    throw std::invalid_argument("ap_verify needs at least 3*Q_r slopes");
  APReport r;
  r.params = params;
  r.i_lo = params.Q_r;
  r.i_hi = count - params.Q_r;
  for (long long i = params.Q_r + 1; i <= count - params.Q_r; ++i) {
    Rational got = slopes.slopes[i + params.Q_r - 1] - slopes.slopes[i - 1];
    got.canonicalize();
    if (got != params.common_difference)
      r.violations.push_back({i, got, params.common_difference});
  }
  r.verified = r.violations.empty();
  return r;
}

CompareReport compare_slopes(const std::vector<Rational>& computed, std::vector<Rational> external) {
  std::sort(external.begin(), external.end());
  CompareReport r;
  r.computed_size = static_cast<long long>(computed.size());
  r.external_size = static_cast<long long>(external.size());
  r.compared = std::min(r.computed_size, r.external_size);
  r.all_match = true;
  for (long long i = 0; i < r.compared; ++i) {
    if (computed[i] != external[i]) {
      r.all_match = false;
      r.first_mismatch = i + 1;  // 1-based
      break;
    }
  }
  if (r.computed_size != r.external_size)
    r.note = "length differs: computed " + std::to_string(r.computed_size) + ", external " +
             std::to_string(r.external_size) + "; compared first " + std::to_string(r.compared);
  return r;
}

WadicDistinctReport wadic_distinct_report(const GhostSeries& series, long long count,
                                          const SlopeOptions& opts) {
  SlopeSequence seq = wadic_slopes(series, count, opts);
  WadicDistinctReport r;
  r.count = static_cast<long long>(seq.slopes.size());
  long long distinct = r.count > 0 ? 1 : 0;
  for (size_t i = 1; i < seq.slopes.size(); ++i)
    if (seq.slopes[i] != seq.slopes[i - 1]) ++distinct;
  r.distinct = distinct;
  r.all_distinct = (r.distinct == r.count);
  return r;
}

}  // namespace ghost
