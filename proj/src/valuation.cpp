#include "ghost/valuation.hpp"

#include <numeric>
#include <stdexcept>

namespace ghost {

long vp(const BigInt& x, long p) {
  if (x == 0) throw std::domain_error("valuation of zero requested");
  if (p < 2) throw std::invalid_argument("vp: p must be >= 2");
  // mpz_remove strips all factors of p and returns how many it removed.
  BigInt stripped, pz(p);
  return static_cast<long>(mpz_remove(stripped.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

long vp(long long x, long p) { return vp(to_bigint(x), p); }

long vp(const Rational& x, long p) {
  if (x == 0) throw std::domain_error("valuation of zero requested");
  return vp(BigInt(x.get_num()), p) - vp(BigInt(x.get_den()), p);
}

long long vp_factorial(long long n, long p) {
  if (n < 0) throw std::invalid_argument("vp_factorial: n must be >= 0");
  if (p < 2) throw std::invalid_argument("vp_factorial: p must be >= 2");
  long long sum = 0;
  for (long long q = p; q <= n; ) {
    sum += n / q;
    if (q > n / p) break;  // next power would overflow past n
    q *= p;
  }
  return sum;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero");
  return std::lcm(a, b);
}

}  // namespace ghost
