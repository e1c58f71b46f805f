#include "doctest.h"

#include "ghost/analysis.hpp"
#include "ghost/model_spec.hpp"

using namespace ghost;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

Rational abs_q(Rational v) { return v < 0 ? Rational(-v) : v; }

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("normalizer reduces to k_n when B = (p-1)A") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto st = normalized_slopes(G, 3);
  std::vector<Rational> expected{q("1/12"), q("5/12"), q("5/12"), q("5/12"), q("5/6")};
  CHECK(st == expected);
  CHECK(normalized_slopes(G, 0).empty());  // d_p(0) < 1
}

TEST_CASE("distribution report at n = 100") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto r = distribution_report(G, 100);
  CHECK(r.k == 400);
  CHECK(r.mass_at_half == q("133/199"));
  CHECK(r.mass_low == q("33/199"));
  CHECK(r.mass_high == q("33/199"));
  CHECK(r.limit_half == q("2/3"));
  CHECK(r.limit_low == q("1/6"));
  CHECK(r.ks_low == q("11/200"));
  CHECK(abs_q(r.mass_at_half - r.limit_half) <= q("1/20"));
  CHECK(r.ks_low <= q("1/10"));
  CHECK(r.ks_high <= q("1/10"));
}

TEST_CASE("distribution converges from n = 50 onward") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto r50 = distribution_report(G, 50);
  auto r100 = distribution_report(G, 100);
  auto r200 = distribution_report(G, 200);
  auto dev = [](const DistributionReport& r) { return abs_q(r.mass_at_half - r.limit_half); };
  CHECK(dev(r100) < dev(r50));
  CHECK(dev(r200) < dev(r50));
  // KS distances shrink monotonically here
  CHECK(r100.ks_low <= r50.ks_low);
  CHECK(r200.ks_low <= r100.ks_low);
  CHECK(r100.ks_high <= r50.ks_high);
  CHECK(r200.ks_high <= r100.ks_high);
}

TEST_CASE("gouvea ratios and the Buzzard bound") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto r = gouvea_check(G, 3);
  CHECK(r.k == 12);
  CHECK(r.ratio_old == q("1/12"));
  CHECK(r.buzzard_bound);  // 1 <= 11/6
  CHECK(r.limit_old == q("1/6"));
  CHECK(r.limit_classical == Rational(1));
  CHECK_THROWS(gouvea_check(G, 0));  // d(0) = 0
}

TEST_CASE("semistable line at n = 3 and a vacuous case") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto r = semistable_check(G, 3);
  CHECK_FALSE(r.vacuous);
  CHECK(r.break_at_d);
  CHECK(r.break_at_dsum);
  CHECK(r.no_interior_vertex);
  CHECK(r.slope == Rational(5));
  CHECK(r.predicted == Rational(6));  // k_n/2
  CHECK(r.deviation == Rational(1));
  CHECK(r.passed());

  GhostParams params(5, 0);
  QuasiLinearSpec d{0, {0, 0, 0}, 3, 1};
  QuasiLinearSpec dn{0, {0, 2, 2}, 3, 2};
  GhostSeries Gz(build_quasilinear_model(params, d, dn));
  auto rz = semistable_check(Gz, 0);
  CHECK(rz.vacuous);
  CHECK(rz.passed());
}

TEST_CASE("ap parameters for the standard models") {
  auto model = build_gamma0_model(5, 1, 0);
  WeightPoint bdry = make_boundary_weight(model.params(), q("1/2"));
  auto p = ap_parameters(model, bdry);
  CHECK(p.Q == 5);  // halved-Q_dp lcm
  CHECK(p.Q_r == 5);
  CHECK(p.r == 0);
  CHECK(p.inner == q("8/5"));
  CHECK(p.common_difference == Rational(4));  // 8 * 1/2

  WeightPoint near = make_near_integer_weight(model.params(), 12, q("3/2"));
  auto pn = ap_parameters(model, near);
  CHECK(pn.r == 1);
  CHECK(pn.Q_r == 25);
  CHECK(pn.common_difference == Rational(44));  // 8 * (3/2 + 4)

  WeightPoint near52 = make_near_integer_weight(model.params(), 12, q("5/2"));
  auto p52 = ap_parameters(model, near52);
  CHECK(p52.r == 2);
  CHECK(p52.Q_r == 125);  // 25 Q
  CHECK(p52.common_difference == Rational(8) * (q("5/2") + 28));

  auto m23 = build_gamma0_model(2, 3, 0);
  auto p23 = ap_parameters(m23, make_boundary_weight(m23.params(), q("1/2")));
  CHECK(p23.Q == 4);  // mu0(3)
  CHECK(p23.inner == q("1/4"));
  CHECK(p23.common_difference == q("1/2"));

  RhobarSpec spec;
  spec.p = 13;
  spec.k_rbar = 12;
  spec.m1 = 1;
  auto mr = build_rhobar_model(spec);
  auto pr = ap_parameters(mr, make_boundary_weight(mr.params(), Rational(1) / 2));
  CHECK(pr.Q == 26);  // p Q_d
  CHECK(make_rational(pr.Q) * pr.inner == Rational(144));  // (p-1)^2 per unit

  WeightPoint integer = make_integer_weight(model.params(), 12);
  CHECK_THROWS(ap_parameters(model, integer));
}

TEST_CASE("ap verification") {
  SlopeSequence toy;
  toy.certified = true;
  for (long v : {1L, 2L, 4L, 5L, 7L, 8L, 10L, 11L}) toy.slopes.push_back(Rational(v));
  toy.count = 8;
  APParameters params;
  params.Q_r = 2;
  params.common_difference = Rational(3);
  auto rep = ap_verify(toy, params);
  CHECK(rep.verified);

  params.common_difference = Rational(5);
  auto bad = ap_verify(toy, params);
  CHECK_FALSE(bad.verified);
  CHECK_FALSE(bad.violations.empty());

  toy.certified = false;
  CHECK_THROWS_WITH_AS(ap_verify(toy, params), "uncertified input", std::invalid_argument);
  toy.certified = true;
  params.Q_r = 3;  // needs >= 9 slopes
  CHECK_THROWS(ap_verify(toy, params));
}

TEST_CASE("boundary slopes form the predicted progressions") {
  auto model = build_gamma0_model(5, 1, 0);
  GhostSeries G(model);
  WeightPoint bdry = make_boundary_weight(model.params(), q("1/2"));
  auto params = ap_parameters(model, bdry);
  auto seq = ghost_slopes(G, bdry, 60);
  REQUIRE(seq.certified);
  auto rep = ap_verify(seq, params);
  CHECK(rep.verified);
  // frozen prefix of the halved w-adic slopes
  std::vector<Rational> head{q("1/2"), q("3/2"), Rational(2), Rational(3),
                             Rational(4), q("9/2"), q("11/2"), Rational(6)};
  for (size_t i = 0; i < head.size(); ++i) CHECK(seq.slopes[i] == head[i]);
}

TEST_CASE("boundary progressions across models and radii") {
  struct Case {
    const char* desc;
    long long Q;
  } cases[] = {{"gamma0:5,1,0", 5}, {"gamma0:2,3,0", 4}, {"gamma0:7,1,0", 14}};
  for (const auto& c : cases) {
    auto model = load_model(c.desc);
    GhostSeries G(model);
    for (const char* v : {"1/4", "1/2"}) {
      WeightPoint bw = make_boundary_weight(model.params(), q(v));
      auto params = ap_parameters(model, bw);
      CHECK(params.Q == c.Q);
      auto seq = ghost_slopes(G, bw, std::max<long long>(150, 3 * params.Q_r + 10));
      REQUIRE(seq.certified);
      CHECK(ap_verify(seq, params).verified);
    }
  }
}

TEST_CASE("normalized slopes stay inside the unit interval at desk scale") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  for (long long n : {50LL, 100LL, 200LL}) {
    auto st = normalized_slopes(G, n);
    REQUIRE_FALSE(st.empty());
    for (const auto& s : st) {
      CHECK(s >= 0);
      CHECK(s <= 1);  // measured: max is (d_p(n)k_n - ...)/k_n < 1, eps_n = 0
    }
  }
}

TEST_CASE("semistable deviation stays within the frozen bound at n = 100") {
  GhostSeries G(build_gamma0_model(5, 1, 0));
  auto r = semistable_check(G, 100);
  CHECK(r.passed());
  CHECK(r.deviation <= 8);
}

TEST_CASE("near-integer progressions hold at a shifted anchor") {
  auto model = build_gamma0_model(5, 1, 0);
  GhostSeries G(model);
  WeightPoint near = make_near_integer_weight(model.params(), 16, q("3/2"));
  auto params = ap_parameters(model, near);
  CHECK(params.Q_r == 25);
  CHECK(params.common_difference == Rational(44));
  auto seq = ghost_slopes(G, near, 200);
  REQUIRE(seq.certified);
  for (long long i = 26; i <= 175; ++i)
    CHECK(seq.slopes[i + 25 - 1] - seq.slopes[i - 1] == params.common_difference);
}

TEST_CASE("rhobar near-integer progressions") {
  RhobarSpec spec;
  spec.p = 13;
  spec.k_rbar = 12;
  spec.m1 = 1;
  auto model = build_rhobar_model(spec);
  GhostSeries G(model);
  WeightPoint near = make_near_integer_weight(model.params(), model.params().k_of(0), q("3/2"));
  auto params = ap_parameters(model, near);
  CHECK(params.Q_r == 338);  // p * Q
  CHECK(params.common_difference == Rational(1944));  // 144 * (3/2 + 12)
  auto seq = ghost_slopes(G, near, 1100);
  REQUIRE(seq.certified);
  CHECK(ap_verify(seq, params).verified);
}

TEST_CASE("slope comparison") {
  std::vector<Rational> computed{Rational(1), Rational(5), Rational(5), Rational(5), Rational(10)};
  auto same = compare_slopes(computed, computed);
  CHECK(same.all_match);
  CHECK(same.first_mismatch == -1);

  auto shorter = compare_slopes(computed, {Rational(1), Rational(5), Rational(5), Rational(5)});
  CHECK(shorter.all_match);
  CHECK(shorter.compared == 4);
  CHECK_FALSE(shorter.note.empty());

  auto diff = compare_slopes(computed, {Rational(1), Rational(5), Rational(5), Rational(6), Rational(10)});
  CHECK_FALSE(diff.all_match);
  CHECK(diff.first_mismatch == 4);

  // unsorted external input is sorted before comparing
  auto unsorted = compare_slopes(computed, {Rational(10), Rational(5), Rational(1), Rational(5), Rational(5)});
  CHECK(unsorted.all_match);
}

TEST_CASE("w-adic distinctness is reported, not asserted") {
  RhobarSpec spec;
  spec.p = 13;
  spec.k_rbar = 12;
  spec.m1 = 1;
  GhostSeries G(build_rhobar_model(spec));
  auto rep = wadic_distinct_report(G, 40);
  CHECK(rep.count == 40);
  CHECK(rep.distinct >= 1);
}

TEST_CASE("distribution ops refuse a degenerate B = 0 model") {
  GhostParams params(5, 0);
  QuasiLinearSpec d{0, {0, 0, 0}, 3, 1};
  QuasiLinearSpec flat{0, {0}, 1, 0};
  GhostSeries G(build_quasilinear_model(params, d, flat));
  CHECK_THROWS_WITH_AS(normalized_slopes(G, 10), "(LG) requires A, B > 0", std::invalid_argument);
}

TEST_SUITE_END();
