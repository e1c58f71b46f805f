#include "ghost/newton.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "ghost/dimension_models.hpp"

namespace ghost {

long long NewtonPolygon::slope_count() const {
  long long c = 0;
  for (const auto& [s, m] : slopes) c += m;
  return c;
}

std::vector<Rational> NewtonPolygon::flat_slopes(long long count) const {
  std::vector<Rational> out;
  for (const auto& [s, m] : slopes) {
    for (long long i = 0; i < m && static_cast<long long>(out.size()) < count; ++i) out.push_back(s);
    if (static_cast<long long>(out.size()) >= count) break;
  }
  return out;
}

NewtonPolygon lower_hull(const std::vector<std::pair<long long, ExtRational>>& points) {
  if (points.empty()) throw std::invalid_argument("lower_hull: empty input");
  std::map<long long, Rational> finite;  // x -> min finite y
  for (const auto& [x, y] : points) {
    if (y.is_infinite()) continue;
    auto it = finite.find(x);
    if (it == finite.end() || y.value() < it->second) finite[x] = y.value();
  }
  if (finite.empty()) throw std::invalid_argument("lower_hull: no finite points");

  NewtonPolygon np;
  auto& h = np.vertices;
  for (const auto& [x, y] : finite) {
    while (h.size() >= 2) {
      const auto& [x1, y1] = h[h.size() - 2];
      const auto& [x2, y2] = h[h.size() - 1];
      // drop the middle point when it lies on or above the chord
      if ((y2 - y1) * to_bigint(x - x1) >= (y - y1) * to_bigint(x2 - x1))
        h.pop_back();
      else
        break;
    }
    h.push_back({x, y});
  }
  for (size_t i = 0; i + 1 < h.size(); ++i) {
    Rational s = (h[i + 1].second - h[i].second) / make_rational(h[i + 1].first - h[i].first);
    s.canonicalize();
    np.slopes.push_back({s, h[i + 1].first - h[i].first});
  }
  return np;
}

namespace {

struct EngineResult {
  SlopeSequence seq;
  NewtonPolygon poly;
};

// Certified first-count slopes of the hull of (i, y(i)). Certification: find
// a hull vertex V >= count with incoming slope s*; every uncomputed point
// j > I satisfies y_j >= v_min * deg(g_j), so it suffices that this bound
// stays on or above the line through (V, y_V) of slope s*. The bound is
// checked directly up to a window where v_min*lambda_u >= s* holds for
// lambda_shift_modulus consecutive u; the lambda-shift identity (positive
// increment B^2/(A(A+B)(2A+B)) * Q per period) then extends it to all u.
template <typename YFun>
EngineResult run_engine(const GhostSeries& series, YFun&& yfun, const Rational& v_min,
                        const WeightPoint& kappa, long long count, const SlopeOptions& opts) {
  if (count < 1) throw std::invalid_argument("slope count must be >= 1");
  auto [A, B] = growth_constants(series.model());
  if (A <= 0 || B <= 0) throw std::invalid_argument("(LG) requires A, B > 0");

  long long Qlam = series.lambda_shift_modulus();
  Rational shift = series.lambda_shift_inner() * to_bigint(Qlam);
  if (shift <= 0) throw std::logic_error("lambda shift must be positive under (LG)");

  long long I = std::max<long long>(2 * count + 16, opts.initial_index);
  if (I > opts.max_index) I = opts.max_index;
  std::vector<std::pair<long long, ExtRational>> pts;

  auto extend_points = [&](long long upto) {
    long long start = static_cast<long long>(pts.size());
    pts.resize(upto + 1, {0, ExtRational()});
    int threads = std::max(1, opts.threads);
    if (threads == 1 || upto - start < 64) {
      for (long long i = start; i <= upto; ++i) pts[i] = std::make_pair(i, yfun(i));
    } else {
      std::vector<std::thread> pool;
      long long chunk = (upto - start + threads) / threads;
      for (int t = 0; t < threads; ++t) {
        long long lo = start + t * chunk, hi = std::min(upto, lo + chunk - 1);
        if (lo > upto) break;
        pool.emplace_back([&, lo, hi] {
          for (long long i = lo; i <= hi; ++i) pts[i] = std::make_pair(i, yfun(i));
        });
      }
      for (auto& th : pool) th.join();
    }
  };

  while (true) {
    extend_points(I);
    NewtonPolygon np = lower_hull(pts);
    if (np.slope_count() < count) {
      if (I >= opts.max_index) {
        EngineResult r{{kappa, count, np.flat_slopes(count), false}, std::move(np)};
        return r;
      }
      I = std::min(2 * I, opts.max_index);
      continue;
    }
    auto flat = np.flat_slopes(count);
    Rational s_star = flat.back();
    long long V = 0;
    Rational yV;
    for (const auto& [x, y] : np.vertices) {
      if (x >= count) {
        V = x;
        yV = y;
        break;
      }
    }

    // Tail scan over u > I.
    bool anchored = true;
    long long run = 0;
    long long deg = series.degree(I);
    long long scan_cap = I + std::max<long long>(64 * Qlam, 4096);
    for (long long u = I + 1; u <= scan_cap; ++u) {
      long long lam = series.delta_data(u).lambda();
      deg += lam;
      // (a) anchor: v_min * deg g_u >= y_V + s*(u - V)
      if (v_min * to_bigint(deg) < yV + s_star * to_bigint(u - V)) {
        anchored = false;
        break;
      }
      // (b) per-step growth: v_min * lambda_u >= s*
      if (v_min * to_bigint(lam) >= s_star) {
        if (++run >= Qlam) break;
      } else {
        run = 0;
      }
    }
    if (anchored && run >= Qlam) {
      EngineResult r{{kappa, count, std::move(flat), true}, std::move(np)};
      return r;
    }
    if (I >= opts.max_index) {
      EngineResult r{{kappa, count, std::move(flat), false}, std::move(np)};
      return r;
    }
    I = std::min(2 * I, opts.max_index);
  }
}

EngineResult run_ghost_engine(const GhostSeries& series, const WeightPoint& kappa, long long count,
                              const SlopeOptions& opts) {
  Rational v_min = profile_lower_bound(series.params(), kappa);
  return run_engine(
      series, [&](long long i) { return series.eval_valuation(i, kappa); }, v_min, kappa, count,
      opts);
}

}  // namespace

SlopeSequence ghost_slopes(const GhostSeries& series, const WeightPoint& kappa, long long count,
                           const SlopeOptions& opts) {
  return run_ghost_engine(series, kappa, count, opts).seq;
}

NewtonPolygon ghost_polygon(const GhostSeries& series, const WeightPoint& kappa, long long count,
                            const SlopeOptions& opts) {
  NewtonPolygon full = run_ghost_engine(series, kappa, count, opts).poly;
  // Truncate at the first vertex covering the requested count.
  NewtonPolygon np;
  long long covered = 0;
  np.vertices.push_back(full.vertices.front());
  for (size_t i = 0; i < full.slopes.size() && covered < count; ++i) {
    np.slopes.push_back(full.slopes[i]);
    covered += full.slopes[i].second;
    np.vertices.push_back(full.vertices[i + 1]);
  }
  return np;
}

SlopeSequence wadic_slopes(const GhostSeries& series, long long count, const SlopeOptions& opts) {
  // Every w_{k_n} reduces to 0 mod p, so mod p the coefficient is w^{deg g_i}
  // and the w-adic polygon is the hull of (i, deg g_i).
  WeightPoint tag = BoundaryWeight{Rational(1)};  // marker only; not a valid weight point
  return run_engine(
             series, [&](long long i) { return ExtRational(make_rational(series.degree(i))); },
             Rational(1), tag, count, opts)
      .seq;
}

}  // namespace ghost
