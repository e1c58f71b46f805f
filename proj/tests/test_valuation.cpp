#include "doctest.h"

#include "ghost/valuation.hpp"

using namespace ghost;

TEST_SUITE_BEGIN("valuation");

TEST_CASE("vp on integers and rationals") {
  CHECK(vp(250LL, 5) == 3);
  CHECK(vp(1LL, 7) == 0);
  CHECK(vp(rational_from_string("9/4"), 2) == -2);
  CHECK(vp(rational_from_string("-9/4"), 3) == 2);
  CHECK(vp(BigInt(-50), 5) == 2);
  CHECK_THROWS_WITH_AS(vp(0LL, 5), "valuation of zero requested", std::domain_error);
}

TEST_CASE("vp is additive on products") {
  for (long p : {2L, 5L}) {
    long long prod = 1;
    long sum = 0;
    for (long long v : {2LL, 3LL, 4LL, 15LL, 250LL, 7LL, 125LL, 10LL}) {
      prod *= v;
      sum += vp(v, p);
    }
    CHECK(vp(prod, p) == sum);
  }
}

TEST_CASE("vp_factorial: Legendre examples") {
  CHECK(vp_factorial(10, 5) == 2);
  CHECK(vp_factorial(0, 3) == 0);
  CHECK(vp_factorial(100, 2) == 97);
  CHECK_THROWS(vp_factorial(-1, 2));
}

TEST_CASE("vp_factorial equals the term-by-term sum") {
  for (long p : {2L, 3L, 5L}) {
    long long sum = 0;
    for (long long n = 1; n <= 2000; ++n) {
      sum += vp(n, p);
      CHECK(vp_factorial(n, p) == sum);
    }
  }
}

TEST_CASE("factorial valuation bounds hold up to 1e5") {
  // n/(p-1) - ceil(log_p n) - 1 <= vp(n!) <= n/(p-1), checked in integers
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long long n = 1; n <= 100000; n = (n < 100 ? n + 1 : n + 37)) {
      long long v = vp_factorial(n, p);
      CHECK(v * (p - 1) <= n);
      long long ceil_log = 0;
      long long q = 1;
      while (q < n) {
        q *= p;
        ++ceil_log;
      }
      CHECK((v + ceil_log + 1) * (p - 1) >= n - (p - 1));
    }
  }
}

TEST_SUITE_END();
