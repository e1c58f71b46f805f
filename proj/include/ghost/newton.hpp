#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghost/ext_rational.hpp"
#include "ghost/ghost_series.hpp"

namespace ghost {

struct NewtonPolygon {
  std::vector<std::pair<long long, Rational>> vertices;      // strictly increasing x
  std::vector<std::pair<Rational, long long>> slopes;        // (slope, multiplicity)
  long long slope_count() const;
  /// Flattened nondecreasing slope list, one entry per unit of x.
  std::vector<Rational> flat_slopes(long long count) const;
};

/// Lower convex hull of finitely many points; infinite points never support
/// the hull. Monotone chain over exact rationals.
NewtonPolygon lower_hull(const std::vector<std::pair<long long, ExtRational>>& points);

struct SlopeSequence {
  WeightPoint weight;
  long long count = 0;
  std::vector<Rational> slopes;  // nondecreasing
  bool certified = false;
};

struct SlopeOptions {
  long long initial_index = 0;   // 0 = pick from count
  long long max_index = 1 << 22; // certification gives up beyond this
  int threads = 1;
};

/// First `count` slopes of NP(G_kappa), certified against all later
/// coefficients via the per-factor valuation lower bound (see README).
SlopeSequence ghost_slopes(const GhostSeries& series, const WeightPoint& kappa, long long count,
                           const SlopeOptions& opts = {});

/// Slopes of the w-adic polygon: the hull of (i, deg g_i).
SlopeSequence wadic_slopes(const GhostSeries& series, long long count, const SlopeOptions& opts = {});

/// Full polygon (vertices + slopes) of the specialization, computed over the
/// same certified prefix as ghost_slopes.
NewtonPolygon ghost_polygon(const GhostSeries& series, const WeightPoint& kappa, long long count,
                            const SlopeOptions& opts = {});

}  // namespace ghost
