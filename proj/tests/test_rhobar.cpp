#include "doctest.h"

#include "ghost/dimension_models.hpp"

using namespace ghost;

namespace {

RhobarSpec make_spec(long p, long k_rbar, bool split, long long m1, long long m2, long long m3,
                     long t = 0) {
  RhobarSpec s;
  s.p = p;
  s.k_rbar = k_rbar;
  s.split = split;
  s.m1 = m1;
  s.m2 = m2;
  s.m3 = m3;
  s.twist = t;
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("rhobar");

TEST_CASE("base table cases") {
  auto generic = rhobar_base_table(make_spec(13, 12, false, 1, 0, 0));
  CHECK(generic.size() == 1);
  CHECK(generic.at({12, 0}) == 1);

  auto split22 = rhobar_base_table(make_spec(7, 2, true, 1, 1, 1));
  CHECK(split22.size() == 3);
  CHECK(split22.at({2, 0}) == 1);
  CHECK(split22.at({6, 5}) == 1);
  CHECK(split22.at({8, 0}) == 1);

  auto tres = rhobar_base_table(make_spec(11, 12, false, 0, 1, 0));  // k_rbar = p+1
  CHECK(tres.size() == 1);
  CHECK(tres.at({12, 0}) == 1);

  // companion with Serre weight 2: the weight p+1 shadow entry appears
  auto edge = rhobar_base_table(make_spec(7, 6, true, 1, 0, 1));
  CHECK(edge.at({6, 0}) == 1);
  CHECK(edge.at({2, 1}) == 1);
  CHECK(edge.at({8, 1}) == 1);
}

TEST_CASE("spec invariants are enforced") {
  CHECK_THROWS(build_rhobar_model(make_spec(11, 12, false, 1, 1, 0)));  // m1 at k=p+1
  CHECK_THROWS(build_rhobar_model(make_spec(13, 12, false, 1, 0, 2)));  // m3 without split
  CHECK_THROWS(build_rhobar_model(make_spec(13, 13, true, 1, 0, 1)));   // split needs k <= p-1
  CHECK_THROWS(build_rhobar_model(make_spec(13, 6, false, 1, 2, 0)));   // m2 off the k=2 class
  CHECK_THROWS(build_rhobar_model(make_spec(13, 1, false, 1, 0, 0)));   // k out of range
  CHECK_THROWS(build_rhobar_model(make_spec(3, 2, false, 1, 1, 0)));    // p<5 without flag
}

TEST_CASE("defect closed forms") {
  CHECK(rhobar_defect(make_spec(13, 12, false, 1, 0, 0)) == 2);
  CHECK(rhobar_defect(make_spec(7, 2, true, 1, 1, 1)) == 4);
  CHECK(rhobar_defect(make_spec(11, 12, false, 0, 1, 0)) == 1);  // m1 forced 0 at p+1
}

TEST_CASE("defect equals the recursion-sum oracle over all valid cases") {
  for (long p : {5L, 7L, 11L, 13L}) {
    for (long k = 2; k <= p + 1; ++k) {
      for (bool split : {false, true}) {
        if (split && k > p - 1) continue;
        for (long long m1 = 0; m1 <= 2; ++m1) {
          if (k == p + 1 && m1 != 0) continue;
          for (long long m2 = 0; m2 <= 2; ++m2) {
            if ((k - 2) % (p - 1) != 0 && m2 != 0) continue;
            for (long long m3 = 0; m3 <= 2; ++m3) {
              if (!split && m3 != 0) continue;
              auto s = make_spec(p, k, split, m1, m2, m3);
              CHECK(rhobar_defect(s) == rhobar_defect_recursion(s));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("generic nonsplit model: derived window and bases") {
  auto spec = make_spec(13, 12, false, 1, 0, 0);
  auto m = build_rhobar_model(spec);
  CHECK(m.pq_d().period == 14);
  CHECK(m.pq_d().defect == 2);
  CHECK(m.pq_dp().period == 1);
  CHECK(m.pq_dp().defect == 2);
  CHECK(m.pq_dnew().defect == 24);
  CHECK(m.pq_dnew().period == 14);
  CHECK(m.dp(0) == 2);
  CHECK(m.d(0) == 1);
  CHECK(m.dnew(0) == 0);

  auto window = rhobar_base_window(spec);
  std::vector<long long> expected{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2};
  CHECK(window == expected);
  CHECK(m.d(14) == 3);  // quasi-linear wrap

  auto r = verify_axioms(m, 0, 30);
  CHECK(r.all_pass());
  CHECK(r.b_is_pminus1_a);
}

TEST_CASE("derived dp base matches the generic closed form on every twist") {
  for (long t = 0; t < 12; ++t) {
    auto spec = make_spec(13, 12, false, 1, 0, 0, t);
    auto m = build_rhobar_model(spec);
    // closed form: 2 m1 when t <= k_{0,t} - 2, else 0
    long k0t = static_cast<long>(m.params().k_base);
    long long expected = (t <= k0t - 2) ? 2 : 0;
    CHECK(rhobar_dp_base(spec) == expected);
    CHECK(m.dp(0) == expected);
  }
}

TEST_CASE("non-derivable specs demand explicit base data") {
  auto split_spec = make_spec(7, 2, true, 1, 1, 1);
  CHECK_THROWS_WITH_AS(build_rhobar_model(split_spec), "base window required",
                       std::invalid_argument);

  split_spec.base_window = std::vector<long long>{1, 1, 1, 1, 2, 3, 4, 5};
  split_spec.dp_base = 2;
  auto m = build_rhobar_model(split_spec);
  CHECK(m.pq_d().defect == 4);
  CHECK(m.d(8) == 5);       // window wrap: d(0) + Q
  CHECK(m.dnew(0) == 0);
  CHECK(verify_axioms(m, 0, 20).all_pass());

  auto odd_weight = make_spec(23, 11, false, 1, 0, 0);
  CHECK_THROWS_WITH_AS(build_rhobar_model(odd_weight), "base window required",
                       std::invalid_argument);
}

TEST_CASE("inconsistent explicit windows are rejected") {
  auto spec = make_spec(13, 12, false, 1, 0, 0);
  spec.base_window = std::vector<long long>{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 4};
  spec.dp_base = 2;  // d^new(0) = 2 - 4 < 0
  CHECK_THROWS_AS(build_rhobar_model(spec), std::invalid_argument);

  spec.base_window = std::vector<long long>{1, 1};  // wrong length
  CHECK_THROWS_AS(build_rhobar_model(spec), std::invalid_argument);
}

TEST_CASE("experimental small primes") {
  auto p3 = make_spec(3, 2, false, 1, 1, 0);
  p3.experimental = true;
  auto m = build_rhobar_model(p3);
  CHECK(m.pq_d().period == 4);
  CHECK(m.pq_d().defect == 2);  // m1 + m2 on the k = 2 class
  CHECK(rhobar_defect_recursion(p3) == 2);
}

TEST_SUITE_END();
