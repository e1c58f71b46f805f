#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ghost {

using Rational = mpq_class;
using BigInt = mpz_class;

// gmpxx has no long long overloads; route 64-bit ints through mpz.
inline BigInt to_bigint(long long v) {
  BigInt z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(to_bigint(num), to_bigint(den));
  q.canonicalize();
  return q;
}

/// A rational extended by +infinity, the value of v_p at a ghost zero.
/// +infinity absorbs addition and compares greater than every rational.
class ExtRational {
 public:
  ExtRational() : value_(0), infinite_(false) {}
  ExtRational(const Rational& q) : value_(q), infinite_(false) { value_.canonicalize(); }
  ExtRational(long v) : value_(v), infinite_(false) {}

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw std::domain_error("ExtRational: value() of +infinity");
    return value_;
  }

  ExtRational operator+(const ExtRational& o) const {
    if (infinite_ || o.infinite_) return infinity();
    return ExtRational(Rational(value_ + o.value_));
  }
  ExtRational& operator+=(const ExtRational& o) {
    *this = *this + o;
    return *this;
  }
  /// Scaling by a nonnegative multiplicity; infinity stays infinite.
  ExtRational scaled(long long mult) const {
    if (infinite_) return infinity();
    return ExtRational(Rational(value_ * to_bigint(mult)));
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

  std::string str() const { return infinite_ ? "inf" : value_.get_str(); }

 private:
  Rational value_;
  bool infinite_;
};

/// Serializes "a/b" (or "a" when b = 1); inverse of rational_from_string.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw std::invalid_argument("malformed rational literal: " + s);
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace ghost
