#include "ghost/dimension_models.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ghost/valuation.hpp"

namespace ghost {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> f;
  for (long long l = 2; l * l <= n; ++l) {
    if (n % l == 0) {
      int e = 0;
      while (n % l == 0) { n /= l; ++e; }
      f.push_back({l, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Kronecker symbols (-4/p) and (-3/p) as used by the p-new formula.
int kronecker_minus4(long p) {
  if (p == 2) return 0;
  return (p % 4 == 1) ? 1 : -1;
}
int kronecker_minus3(long p) {
  if (p == 3) return 0;
  if (p == 2) return -1;  // -3 = 5 mod 8
  return (p % 3 == 1) ? 1 : -1;
}

Rational floor_term(long long k, long long m) {
  // floor(k/m) - (k-1)/m
  return make_rational(floor_div(k, m)) - make_rational(k - 1, m);
}

}  // namespace

MuInvariants mu_invariants(long long N) {
  if (N <= 0) throw std::invalid_argument("mu_invariants: N must be positive");
  MuInvariants out{1, 1, 1, 1};  // empty products at N = 1
  for (auto [l, e] : factorize(N)) {
    out.mu0 *= ipow(l, e) + ipow(l, e - 1);
    // local solution counts of x^2+1 = 0 and x^2+x+1 = 0 mod l^e
    out.mu02 *= (l == 2) ? ((e == 1) ? 1 : 0) : ((l % 4 == 1) ? 2 : 0);
    out.mu03 *= (l == 3) ? ((e == 1) ? 1 : 0) : ((l % 3 == 1) ? 2 : 0);
    out.c0 *= (e % 2 == 0) ? ipow(l, e / 2) + ipow(l, e / 2 - 1) : 2 * ipow(l, (e - 1) / 2);
  }
  return out;
}

long long classical_dim(long long k, long long N) {
  if (((k % 2) + 2) % 2 != 0) throw std::invalid_argument("classical_dim: k must be even");
  MuInvariants mu = mu_invariants(N);
  Rational v = make_rational(k - 1, 12) * to_bigint(mu.mu0) + floor_term(k, 4) * to_bigint(mu.mu02) +
               floor_term(k, 3) * to_bigint(mu.mu03) - make_rational(mu.c0, 2);
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("classical_dim: non-integral result");
  return static_cast<long long>(v.get_num().get_si());
}

long long classical_new_dim(long long k, long long N, long p) {
  if (((k % 2) + 2) % 2 != 0) throw std::invalid_argument("classical_new_dim: k must be even");
  if (!is_prime(p)) throw std::invalid_argument("classical_new_dim: p must be prime");
  if (N % p == 0) throw std::invalid_argument("classical_new_dim: p must not divide N");
  MuInvariants mu = mu_invariants(N);
  Rational v = make_rational((k - 1) * (p - 1), 12) * to_bigint(mu.mu0) +
               floor_term(k, 4) * (-1 + kronecker_minus4(p)) * to_bigint(mu.mu02) +
               floor_term(k, 3) * (-1 + kronecker_minus3(p)) * to_bigint(mu.mu03);
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("classical_new_dim: non-integral result");
  return static_cast<long long>(v.get_num().get_si());
}

long long QuasiLinearSpec::eval(long long n) const {
  long long idx = n - n_lo;
  long long m = floor_div(idx, period);
  long long r = idx - m * period;
  return base.at(static_cast<size_t>(r)) + m * defect;
}

DimensionModel::DimensionModel(GhostParams params, ModelKind kind, std::string description,
                               std::function<long long(long long)> d,
                               std::function<long long(long long)> dnew,
                               PeriodDefect pq_d, PeriodDefect pq_dnew,
                               PeriodDefect pq_dsum, PeriodDefect pq_dp)
    : params_(params),
      kind_(kind),
      description_(std::move(description)),
      d_(std::move(d)),
      dnew_(std::move(dnew)),
      pq_d_(pq_d),
      pq_dnew_(pq_dnew),
      pq_dsum_(pq_dsum),
      pq_dp_(pq_dp) {}

DimensionModel build_gamma0_model(long p, long long N, long long k0) {
  if (!is_prime(p)) throw std::invalid_argument("build_gamma0_model: p must be prime");
  if (N <= 0) throw std::invalid_argument("build_gamma0_model: N must be positive");
  if (N % p == 0) throw std::invalid_argument("build_gamma0_model: p must not divide N");
  if (p * N <= 3) throw std::invalid_argument("excluded pair (p,N): need pN > 3");
  GhostParams params(p, k0);
  if (k0 % 2 != 0 || k0 < 0 || k0 >= params.delta)
    throw std::invalid_argument("build_gamma0_model: k0 must be even in [0, delta)");

  long long mu0 = mu_invariants(N).mu0;
  long long g = std::gcd<long long>(12, params.delta);
  PeriodDefect pq_d{12 / g, params.delta * mu0 / g};
  PeriodDefect pq_dnew{pq_d.period, (p - 1) * pq_d.defect};
  PeriodDefect pq_dsum, pq_dp;
  if (p > 3) {
    pq_dsum = {pq_d.period, p * pq_d.defect};
    pq_dp = {1, (p - 1) * (p + 1) * mu0 / 12};
  } else {
    pq_dsum = {(p == 3) ? 2 : 3, mu0};
    pq_dp = {p, (p - 1) * mu0};
  }
  // The formulas satisfy D_{k+12} = D_k + mu0 exactly, so one period of
  // values determines them everywhere; evaluation then stays in integers.
  QuasiLinearSpec d_spec{0, {}, pq_d.period, pq_d.defect};
  QuasiLinearSpec dnew_spec{0, {}, pq_dnew.period, pq_dnew.defect};
  for (long long n = 0; n < pq_d.period; ++n) {
    d_spec.base.push_back(classical_dim(params.k_of(n), N));
    dnew_spec.base.push_back(classical_new_dim(params.k_of(n), N, p));
  }
  auto d = [d_spec](long long n) { return d_spec.eval(n); };
  auto dnew = [dnew_spec](long long n) { return dnew_spec.eval(n); };
  std::string desc =
      "gamma0:" + std::to_string(p) + "," + std::to_string(N) + "," + std::to_string(k0);
  return DimensionModel(params, ModelKind::Gamma0, desc, d, dnew, pq_d, pq_dnew, pq_dsum, pq_dp);
}

DimensionModel build_quasilinear_model(const GhostParams& params, const QuasiLinearSpec& d_spec,
                                       const QuasiLinearSpec& dnew_spec) {
  for (const auto* s : {&d_spec, &dnew_spec}) {
    if (s->period <= 0) throw std::invalid_argument("quasilinear: period must be positive");
    if (static_cast<long long>(s->base.size()) != s->period)
      throw std::invalid_argument("quasilinear: base window must cover one period");
  }
  long long L = lcm_ll(d_spec.period, dnew_spec.period);
  long long Qd = d_spec.defect * (L / d_spec.period);
  long long Qn = dnew_spec.defect * (L / dnew_spec.period);
  if (Qd <= 0 || Qd + Qn <= 0) throw std::invalid_argument("(G) fails: need Q_d > 0 and Q_d + Q_dnew > 0");
  PeriodDefect pq_d{d_spec.period, d_spec.defect};
  PeriodDefect pq_dnew{dnew_spec.period, dnew_spec.defect};
  PeriodDefect pq_dsum{L, Qd + Qn};
  PeriodDefect pq_dp{L, 2 * Qd + Qn};
  auto d = [d_spec](long long n) { return d_spec.eval(n); };
  auto dnew = [dnew_spec](long long n) { return dnew_spec.eval(n); };
  return DimensionModel(params, ModelKind::QuasiLinear, "quasilinear", d, dnew, pq_d, pq_dnew,
                        pq_dsum, pq_dp);
}

namespace {

void validate_rhobar_spec(const RhobarSpec& s) {
  if (!is_prime(s.p)) throw std::invalid_argument("rhobar: p must be prime");
  if (s.p < 5 && !s.experimental)
    throw std::invalid_argument("rhobar: p < 5 requires the experimental flag");
  if (s.k_rbar < 2 || s.k_rbar > s.p + 1)
    throw std::invalid_argument("rhobar: k_rbar must lie in [2, p+1]");
  if (s.m1 < 0 || s.m2 < 0 || s.m3 < 0) throw std::invalid_argument("rhobar: multiplicities >= 0");
  if (s.k_rbar == s.p + 1 && s.m1 != 0)
    throw std::invalid_argument("rhobar: k_rbar = p+1 forces m1 = 0");
  if (!s.split && s.m3 != 0) throw std::invalid_argument("rhobar: m3 used only when split at p");
  if (s.split && s.k_rbar > s.p - 1)
    throw std::invalid_argument("rhobar: split spec needs k_rbar <= p-1 (companion weight in range)");
  long pm1 = (s.p == 2) ? 1 : s.p - 1;
  if ((s.k_rbar - 2) % pm1 != 0 && s.m2 != 0)
    throw std::invalid_argument("rhobar: m2 meaningful only when k_rbar = 2 mod p-1");
}

long normalize_twist(long t, long p) {
  long pm1 = (p == 2) ? 1 : p - 1;
  return ((t % pm1) + pm1) % pm1;
}

// Representative of g mod p-1 inside (2, p+1].
long alpha_rep(long long g, long p) {
  long pm1 = (p == 2) ? 1 : p - 1;
  long r = static_cast<long>(((g % pm1) + pm1) % pm1);
  while (r <= 2) r += pm1;
  return r;
}

long long table_get(const std::map<std::pair<long, long>, long long>& tbl, long k, long t, long p) {
  auto it = tbl.find({k, normalize_twist(t, p)});
  return it == tbl.end() ? 0 : it->second;
}

// dim H^1_c(Gamma, I_g) localized at the twist t, from the base table.
long long induced_dim_halved(const std::map<std::pair<long, long>, long long>& tbl, long long g,
                             long t, long p) {
  long a = alpha_rep(g + 2, p);
  return table_get(tbl, a, t, p) + table_get(tbl, p + 3 - a, static_cast<long>(t - g), p);
}

long k0_of_twist(const RhobarSpec& s) {
  long pm1 = (s.p == 2) ? 1 : s.p - 1;
  long target = static_cast<long>(((s.k_rbar + 2LL * s.twist) % pm1 + pm1) % pm1);
  for (long k = 2; k < s.p + 1; ++k)
    if (k % pm1 == target % pm1) return k;
  throw std::logic_error("rhobar: no base weight on the twist component");
}

}  // namespace

std::map<std::pair<long, long>, long long> rhobar_base_table(const RhobarSpec& spec) {
  validate_rhobar_spec(spec);
  long p = spec.p;
  long pm1 = (p == 2) ? 1 : p - 1;
  std::map<std::pair<long, long>, long long> tbl;
  auto add = [&](long k, long t, long long v) {
    if (v != 0) tbl[{k, normalize_twist(t, p)}] += v;
  };
  if (spec.k_rbar != p + 1) add(spec.k_rbar, 0, spec.m1);
  if ((spec.k_rbar - 2) % pm1 == 0) add(p + 1, 0, spec.m2);
  if (spec.split) {
    add(p + 1 - spec.k_rbar, p - spec.k_rbar, spec.m3);
    // Companion of Serre weight 2: multiplication by E_{p-1} forces the
    // weight p+1 entry on the same twist.
    if (spec.k_rbar == p - 1) add(p + 1, p - spec.k_rbar, spec.m3);
  }
  return tbl;
}

long long rhobar_defect(const RhobarSpec& spec) {
  validate_rhobar_spec(spec);
  long pm1 = (spec.p == 2) ? 1 : spec.p - 1;
  bool cong2 = (spec.k_rbar - 2) % pm1 == 0;
  if (!spec.split && !cong2) return 2 * spec.m1;
  if (!spec.split && cong2) return spec.m1 + spec.m2;
  if (spec.split && !cong2) return 2 * spec.m1 + 2 * spec.m3;
  return spec.m1 + spec.m2 + 2 * spec.m3;
}

long long rhobar_defect_recursion(const RhobarSpec& spec) {
  auto tbl = rhobar_base_table(spec);
  long p = spec.p;
  long pm1 = (p == 2) ? 1 : p - 1;
  long long total = 0;
  for (long j = 0; j < pm1; ++j) {
    long a = alpha_rep(spec.k_rbar + 2LL * j, p);
    total += table_get(tbl, a, j, p);
    total += table_get(tbl, p + 3 - a, static_cast<long>(2 - spec.k_rbar - j), p);
  }
  return total;
}

long long rhobar_dp_base(const RhobarSpec& spec) {
  // d_{p,t}(0) = (1/2) sum_j dim H^1_c(Gamma, I_{2j-g0}); each summand here
  // is already halved.
  auto tbl = rhobar_base_table(spec);
  long g0 = k0_of_twist(spec) - 2;
  long long sum = 0;
  for (long j = 0; j <= g0; ++j)
    sum += induced_dim_halved(tbl, 2LL * j - g0, static_cast<long>(spec.twist + j - g0), spec.p);
  return sum;
}

std::vector<long long> rhobar_base_window(const RhobarSpec& spec) {
  validate_rhobar_spec(spec);
  if (spec.split || spec.k_rbar % 2 != 0 || spec.p == 2)
    throw std::invalid_argument("base window required (derivation covers non-split even Serre weight only)");
  auto tbl = rhobar_base_table(spec);
  long p = spec.p;
  long k0t = k0_of_twist(spec);
  // D(g, t)/1: descend g by p+1 (twist by -1) until the base strip g <= p-1.
  auto D = [&](long long g, long t) {
    long long tot = 0;
    while (g > p) {
      tot += 2 * induced_dim_halved(tbl, g, t, p);
      g -= p + 1;
      t -= 1;
    }
    if (g == p) throw std::logic_error("rhobar window descent hit the undefined g = p step");
    return tot + 2 * table_get(tbl, static_cast<long>(g + 2), t, p);
  };
  std::vector<long long> window;
  for (long n = 0; n <= p; ++n) {
    long long v = D(k0t - 2 + static_cast<long long>(n) * (p - 1), spec.twist);
    if (v % 2 != 0) throw std::logic_error("rhobar: odd cohomology dimension");
    window.push_back(v / 2);
  }
  return window;
}

DimensionModel build_rhobar_model(const RhobarSpec& spec) {
  validate_rhobar_spec(spec);
  long p = spec.p;
  long long Q = rhobar_defect(spec);
  if (rhobar_defect_recursion(spec) != Q)
    throw std::logic_error("inconsistent rhobar data: defect recursion mismatch");
  if (Q <= 0) throw std::invalid_argument("(G) fails: rhobar defect must be positive");

  bool derivable = !spec.split && spec.k_rbar % 2 == 0 && p != 2;
  std::vector<long long> window;
  if (spec.base_window) {
    window = *spec.base_window;
    if (static_cast<long long>(window.size()) != p + 1)
      throw std::invalid_argument("rhobar: base_window must have length p+1");
  } else if (derivable) {
    window = rhobar_base_window(spec);
  } else {
    throw std::invalid_argument("base window required");
  }
  long long dp0 = spec.dp_base ? *spec.dp_base : rhobar_dp_base(spec);

  long k0t = k0_of_twist(spec);
  GhostParams params(p, k0t);
  QuasiLinearSpec d_spec{0, window, p + 1, Q};
  auto d = [d_spec](long long n) { return d_spec.eval(n); };
  auto dnew = [d_spec, dp0, Q](long long n) { return (dp0 + n * Q) - 2 * d_spec.eval(n); };

  // Validation: d_t^new >= 0 for n >= 0 and (ND); periodicity reduces both
  // to a window of checks plus defect signs.
  for (long long n = 0; n <= 2 * (p + 1); ++n) {
    if (dnew(n) < 0) throw std::invalid_argument("inconsistent rhobar data: d^new < 0 at n=" + std::to_string(n));
    if (d(n + 1) < d(n)) throw std::invalid_argument("inconsistent rhobar data: d not non-decreasing");
    if (d(n + 1) + dnew(n + 1) < d(n) + dnew(n))
      throw std::invalid_argument("inconsistent rhobar data: d+d^new not non-decreasing");
  }

  std::string desc = "rhobar:" + std::to_string(p) + "," + std::to_string(spec.k_rbar) + "," +
                     (spec.split ? std::string("split") : std::string("nonsplit")) + ",m=" +
                     std::to_string(spec.m1) + "," + std::to_string(spec.m2) + "," +
                     std::to_string(spec.m3) + ",t=" + std::to_string(spec.twist);
  return DimensionModel(params, ModelKind::Rhobar, desc, d, dnew, PeriodDefect{p + 1, Q},
                        PeriodDefect{p + 1, (p - 1) * Q}, PeriodDefect{p + 1, p * Q},
                        PeriodDefect{1, Q});
}

bool AxiomReport::all_pass() const {
  return nd_d && nd_dsum && nd_dp && ql_d && ql_dnew && ql_dsum && ql_dp && growth &&
         window_covers_periods;
}

AxiomReport verify_axioms(const DimensionModel& model, long long n_lo, long long n_hi) {
  AxiomReport r;
  long long maxP = std::max({model.pq_d().period, model.pq_dnew().period, model.pq_dsum().period,
                             model.pq_dp().period});
  r.window_covers_periods = (n_hi - n_lo) >= maxP;
  if (!r.window_covers_periods) r.failures.push_back("window shorter than the largest declared period");

  auto nd = [&](auto&& f, bool& flag, const std::string& name) {
    flag = true;
    for (long long n = n_lo; n < n_hi; ++n)
      if (f(n + 1) < f(n)) {
        flag = false;
        r.failures.push_back("(ND) fails for " + name + " at n=" + std::to_string(n));
        break;
      }
  };
  nd([&](long long n) { return model.d(n); }, r.nd_d, "d");
  nd([&](long long n) { return model.dsum(n); }, r.nd_dsum, "d+d^new");
  nd([&](long long n) { return model.dp(n); }, r.nd_dp, "d_p");

  auto ql = [&](auto&& f, const PeriodDefect& pq, bool& flag, const std::string& name) {
    flag = true;
    for (long long n = n_lo; n + pq.period <= n_hi; ++n)
      if (f(n + pq.period) != f(n) + pq.defect) {
        flag = false;
        r.failures.push_back("(QL) fails for " + name + " at n=" + std::to_string(n));
        break;
      }
  };
  ql([&](long long n) { return model.d(n); }, model.pq_d(), r.ql_d, "d");
  ql([&](long long n) { return model.dnew(n); }, model.pq_dnew(), r.ql_dnew, "d^new");
  ql([&](long long n) { return model.dsum(n); }, model.pq_dsum(), r.ql_dsum, "d+d^new");
  ql([&](long long n) { return model.dp(n); }, model.pq_dp(), r.ql_dp, "d_p");

  r.growth = model.pq_d().defect > 0 && model.pq_dsum().defect > 0;
  if (!r.growth) r.failures.push_back("(G) fails: nonpositive defect");

  auto [A, B] = growth_constants(model);
  r.A = A;
  r.B = B;
  r.b_is_pminus1_a = (B == Rational(model.params().p - 1) * A);
  return r;
}

std::pair<Rational, Rational> growth_constants(const DimensionModel& model) {
  Rational A = make_rational(model.pq_d().defect, model.pq_d().period);
  Rational B = make_rational(model.pq_dnew().defect, model.pq_dnew().period);
  return {A, B};
}

}  // namespace ghost
