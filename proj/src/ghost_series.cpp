#include "ghost/ghost_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ghost/valuation.hpp"

namespace ghost {

namespace {

constexpr int kMaxBracketDoublings = 48;  // keeps brackets far from int64 overflow

// Largest n with f(n) < bound, f nondecreasing under (ND).
template <typename F>
long long sup_below(F&& f, long long bound, long long near_i) {
  long long lo = -2, hi = 2;
  int guard = 0;
  while (f(hi) < bound) {
    hi *= 2;
    if (++guard > kMaxBracketDoublings)
      throw std::runtime_error("growth axiom violated near i=" + std::to_string(near_i));
  }
  guard = 0;
  while (f(lo) >= bound) {
    lo *= 2;
    if (++guard > kMaxBracketDoublings)
      throw std::runtime_error("growth axiom violated near i=" + std::to_string(near_i));
  }
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    (f(mid) < bound ? lo : hi) = mid;
  }
  return lo;
}

// Smallest n with f(n) >= bound, f nondecreasing.
template <typename F>
long long inf_atleast(F&& f, long long bound, long long near_i) {
  return sup_below(f, bound, near_i) + 1;
}

}  // namespace

GhostSeries::GhostSeries(DimensionModel model) : model_(std::move(model)) {}

// TODO: seed the brackets from n ~ i * P_d/Q_d rather than doubling out
// from the origin; the searches are not hot enough yet to matter.
long long GhostSeries::hz_g(long long i) const {
  return sup_below([this](long long n) { return model_.d(n); }, i, i);
}

long long GhostSeries::lz_g(long long i) const {
  return inf_atleast([this](long long n) { return model_.dsum(n); }, i + 1, i);
}

std::shared_ptr<const GhostCoefficient> GhostSeries::coefficient(long long i) const {
  if (i < 0) throw std::invalid_argument("coefficient index must be >= 0");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
  }
  auto coeff = std::make_shared<GhostCoefficient>();
  coeff->index = i;
  if (i > 0) {
    long long lz = lz_g(i), hz = hz_g(i);
    for (long long n = lz; n <= hz; ++n) {
      long long mult = std::min(i - model_.d(n), model_.dsum(n) - i);
      if (mult < 0) throw std::logic_error("(ND) violated: negative multiplicity");
      if (mult >= 1) {
        coeff->zeros.push_back({n, mult});
        coeff->degree += mult;
      }
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = cache_.emplace(i, std::move(coeff));
  return it->second;  // idempotent: a racing identical insert wins harmlessly
}

long long GhostSeries::degree(long long i) const { return coefficient(i)->degree; }

DeltaData GhostSeries::delta_data(long long i) const {
  if (i < 1) throw std::invalid_argument("delta data needs i >= 1");
  DeltaData d;
  d.index = i;
  // Zero of Delta_i^+ iff d(n) < i and 2i <= d_p(n); zero of Delta_i^- iff
  // d_p(n) + 2 <= 2i and i <= d(n)+dnew(n). Thresholds doubled to stay integral.
  long long phz = sup_below([this](long long n) { return model_.d(n); }, i, i);
  long long plz = inf_atleast([this](long long n) { return model_.dp(n); }, 2 * i, i);
  long long mhz = sup_below([this](long long n) { return model_.dp(n); }, 2 * i - 1, i);
  long long mlz = inf_atleast([this](long long n) { return model_.dsum(n); }, i, i);
  if (plz <= phz) {
    d.plus_nonempty = true;
    d.plus_lz = plz;
    d.plus_hz = phz;
    d.lambda_plus = phz - plz + 1;
  }
  if (mlz <= mhz) {
    d.minus_nonempty = true;
    d.minus_lz = mlz;
    d.minus_hz = mhz;
    d.lambda_minus = mhz - mlz + 1;
  }
  return d;
}

namespace {

long long vp_small(long long x, long p) {
  long long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

ExtRational GhostSeries::eval_valuation(long long i, const WeightPoint& kappa) const {
  auto coeff = coefficient(i);
  const GhostParams& params = model_.params();

  // Boundary: every factor contributes exactly v.
  if (const auto* bw = std::get_if<BoundaryWeight>(&kappa))
    return ExtRational(Rational(bw->v * to_bigint(coeff->degree)));

  // Integer and near-integer profiles at w_{k_n} are 1 + v_p(2) + v_p(k - k_n)
  // capped at alpha; both accumulate in plain integers.
  long vp2 = (params.p == 2) ? 1 : 0;
  if (const auto* iw = std::get_if<IntegerWeight>(&kappa)) {
    params.require_on_component(iw->k);
    long long sum = 0;
    for (const auto& [n, mult] : coeff->zeros) {
      long long diff = iw->k - params.k_of(n);
      if (diff == 0) return ExtRational::infinity();
      sum += mult * (1 + vp2 + vp_small(diff, params.p));
    }
    return ExtRational(make_rational(sum));
  }

  const auto& nw = std::get<NearIntegerWeight>(kappa);
  params.require_on_component(nw.k_plus);
  long long int_sum = 0, alpha_hits = 0;
  for (const auto& [n, mult] : coeff->zeros) {
    long long diff = nw.k_plus - params.k_of(n);
    if (diff == 0) {
      alpha_hits += mult;
      continue;
    }
    Rational wdv = make_rational(1 + vp2 + vp_small(diff, params.p));
    if (wdv < nw.alpha)
      int_sum += mult * (1 + vp2 + vp_small(diff, params.p));
    else
      alpha_hits += mult;
  }
  Rational total = make_rational(int_sum) + nw.alpha * to_bigint(alpha_hits);
  total.canonicalize();
  return ExtRational(total);
}

ExtRational GhostSeries::exact_eval_oracle(long long i, long long k) const {
  const auto& params = model_.params();
  params.require_on_component(k);
  auto coeff = coefficient(i);
  Rational wk = exact_weight_coordinate(params, k);
  long long val = 0;
  bool small = coeff->degree <= 64;
  Rational product(1);
  for (const auto& [n, mult] : coeff->zeros) {
    Rational diff = wk - exact_weight_coordinate(params, params.k_of(n));
    if (diff == 0) return ExtRational::infinity();
    val += mult * vp(diff, params.p);
    if (small)
      for (long long m = 0; m < mult; ++m) product *= diff;
  }
  if (small && coeff->degree > 0 && vp(product, params.p) != val)
    throw std::logic_error("oracle: product valuation disagrees with factor sum");
  return ExtRational(make_rational(val));
}

ExtRational GhostSeries::delta_slope(long long i, const WeightPoint& kappa) const {
  if (i < 1) throw std::invalid_argument("delta slope needs i >= 1");
  ExtRational prev = eval_valuation(i - 1, kappa);
  if (prev.is_infinite())
    throw std::domain_error("inside semistable range: use the semistable line");
  ExtRational cur = eval_valuation(i, kappa);
  if (cur.is_infinite()) return ExtRational::infinity();
  return ExtRational(Rational(cur.value() - prev.value()));
}

Rational GhostSeries::delta_star(long long i, long long n) const {
  DeltaData dd = delta_data(i);
  const auto& params = model_.params();
  long long kn = params.k_of(n);
  Rational sum(0);
  auto accumulate = [&](bool nonempty, long long lz, long long hz, int sign) {
    if (!nonempty) return;
    for (long long m = lz; m <= hz; ++m) {
      if (m == n) continue;  // the removed simple zero/pole
      ExtRational v = weight_diff_valuation(params, kn, params.k_of(m));
      sum += sign * v.value();
    }
  };
  accumulate(dd.plus_nonempty, dd.plus_lz, dd.plus_hz, +1);
  accumulate(dd.minus_nonempty, dd.minus_lz, dd.minus_hz, -1);
  return sum;
}

long long GhostSeries::lambda_shift_modulus() const {
  long long qd = model_.pq_d().defect;
  long long qdp = model_.pq_dp().defect;
  long long qds = model_.pq_dsum().defect;
  if (qdp % 2 == 0) qdp /= 2;
  return lcm_ll(lcm_ll(qd, qdp), qds);
}

Rational GhostSeries::lambda_shift_inner() const {
  Rational inner = make_rational(model_.pq_d().period, model_.pq_d().defect) -
                   Rational(4) * make_rational(model_.pq_dp().period, model_.pq_dp().defect) +
                   make_rational(model_.pq_dsum().period, model_.pq_dsum().defect);
  inner.canonicalize();
  return inner;
}

}  // namespace ghost
