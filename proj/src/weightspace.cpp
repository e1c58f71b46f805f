#include "ghost/weightspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "ghost/valuation.hpp"

namespace ghost {

GhostParams::GhostParams(long p_, long long k_base_) {
  if (!is_prime(p_)) throw std::invalid_argument("GhostParams: p must be prime");
  p = p_;
  q = (p == 2) ? 4 : p;
  delta = (p == 2) ? 2 : p - 1;
  v0 = (p == 2) ? 3 : 1;
  gamma = (p == 2) ? 5 : 1 + p;
  k_base = k_base_;
  component = static_cast<long>(((k_base % delta) + delta) % delta);
}

void GhostParams::require_on_component(long long k) const {
  if (!on_component(k)) throw std::invalid_argument("weights on different components");
}

WeightPoint make_integer_weight(const GhostParams& params, long long k) {
  params.require_on_component(k);
  return IntegerWeight{k};
}

WeightPoint make_near_integer_weight(const GhostParams& params, long long k_plus, const Rational& alpha) {
  params.require_on_component(k_plus);
  if (alpha < params.v0)
    throw std::invalid_argument("near-integer weight requires alpha >= v0");
  return NearIntegerWeight{k_plus, alpha};
}

WeightPoint make_boundary_weight(const GhostParams& params, const Rational& v) {
  if (v <= 0 || v >= params.v0)
    throw std::invalid_argument("boundary weight requires 0 < v < v0");
  return BoundaryWeight{v};
}

std::string weight_to_string(const WeightPoint& w) {
  if (const auto* iw = std::get_if<IntegerWeight>(&w)) return "int:" + std::to_string(iw->k);
  if (const auto* nw = std::get_if<NearIntegerWeight>(&w))
    return "near:" + std::to_string(nw->k_plus) + "," + rational_to_string(nw->alpha);
  return "boundary:" + rational_to_string(std::get<BoundaryWeight>(w).v);
}

WeightPoint parse_weight(const GhostParams& params, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("weight descriptor needs kind:value");
  std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
  if (kind == "int") return make_integer_weight(params, std::stoll(rest));
  if (kind == "boundary") return make_boundary_weight(params, rational_from_string(rest));
  if (kind == "near") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("near weight needs near:k,alpha");
    return make_near_integer_weight(params, std::stoll(rest.substr(0, comma)),
                                    rational_from_string(rest.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown weight kind: " + kind);
}

ExtRational weight_diff_valuation(const GhostParams& params, long long k, long long k2) {
  params.require_on_component(k);
  params.require_on_component(k2);
  if (k == k2) return ExtRational::infinity();
  long vp2 = (params.p == 2) ? 1 : 0;
  return ExtRational(Rational(1 + vp2 + vp(k - k2, params.p)));
}

Rational exact_weight_coordinate(const GhostParams& params, long long k) {
  params.require_on_component(k);
  long long e = k;
  if (params.p == 2 && params.component == 1) e = k - 1;
  BigInt g(params.gamma);
  if (e >= 0) {
    BigInt pow;
    mpz_pow_ui(pow.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(pow - 1);
  }
  BigInt pow;
  mpz_pow_ui(pow.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(-e));
  Rational r(BigInt(1 - pow), pow);  // gamma^e - 1 = (1 - gamma^{-e})/gamma^{-e}
  r.canonicalize();
  return r;
}

ExtRational weight_valuation_profile(const GhostParams& params, const WeightPoint& kappa, long long n) {
  long long kn = params.k_of(n);
  if (const auto* iw = std::get_if<IntegerWeight>(&kappa))
    return weight_diff_valuation(params, iw->k, kn);
  if (const auto* nw = std::get_if<NearIntegerWeight>(&kappa)) {
    ExtRational w = weight_diff_valuation(params, nw->k_plus, kn);
    ExtRational a{nw->alpha};
    return w < a ? w : a;
  }
  return ExtRational(std::get<BoundaryWeight>(kappa).v);
}

Rational profile_lower_bound(const GhostParams& params, const WeightPoint& kappa) {
  if (const auto* bw = std::get_if<BoundaryWeight>(&kappa)) return bw->v;
  return Rational(params.v0);
}

}  // namespace ghost
