#pragma once

#include <cstdint>

#include "ghost/ext_rational.hpp"

namespace ghost {

/// p-adic valuation of a nonzero integer, normalized so vp(p) = 1.
long vp(const BigInt& x, long p);
long vp(long long x, long p);

/// p-adic valuation of a nonzero rational: vp(num) - vp(den).
long vp(const Rational& x, long p);

/// Legendre sum for vp(n!).
long long vp_factorial(long long n, long p);

bool is_prime(long long n);

long long lcm_ll(long long a, long long b);

}  // namespace ghost
