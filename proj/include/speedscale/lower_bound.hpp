#pragma once

// Numeric evaluation of the general lower bound for g(k) = k^alpha:
//
//   max_z max_{0 < x <= g(z+1) - 2g(z) + g(z-1)} min_{1 <= k <= z}
//     [k(D + x - 1) + z(D + x) - z^a] / [k(D + x) - k^a],  D = z^a - (z-1)^a
//
// The x maximization runs on a uniform grid and is then polished around
// the best grid point by golden-section search, since the optimum often
// sits on a kink between two k branches.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "speedscale/core.hpp"
#include "speedscale/parallel.hpp"

namespace speedscale {

struct LowerBoundCurvePoint {
  double alpha = 0.0;
  std::int64_t z = 0;
  double x = 0.0;
  std::int64_t k_star = 0;
  double value = 0.0;
};

struct LowerBoundOptions {
  std::int64_t z_max = 200;
  std::int64_t x_grid = 64;
  bool keep_grid = true;  // retain every (z, x) grid point in the result
  bool refine = true;     // golden-section polish of the best x per z
};

struct LowerBoundResult {
  double alpha = 0.0;
  std::vector<LowerBoundCurvePoint> grid;   // (z, x) grid, if kept
  std::vector<LowerBoundCurvePoint> per_z;  // best x for each z
  LowerBoundCurvePoint best;
};

/// The inner ratio at fixed (z, x) as a callable over k, using a k^alpha
/// table.
class LowerBoundSlice {
 public:
  LowerBoundSlice(double alpha, std::int64_t z, const std::vector<double>& pow_table)
      : alpha_(alpha), z_(z), pow_(pow_table) {
    const double zd = static_cast<double>(z);
    z_pow_ = std::pow(zd, alpha);
    // (z-1)^a and (z+1)^a relative to z^a, without cancellation
    const double down = z == 1 ? -1.0 : std::expm1(alpha * std::log1p(-1.0 / zd));
    const double up = std::expm1(alpha * std::log1p(1.0 / zd));
    d_ = -z_pow_ * down;
    x_max_ = z_pow_ * (up + down);
  }

  double x_max() const { return x_max_; }

  /// +inf where the denominator is not positive.
  double value(std::int64_t k, double x) const {
    const double kd = static_cast<double>(k);
    const double den = kd * (d_ + x) - pow_[static_cast<std::size_t>(k)];
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    const double num = kd * (d_ + x - 1.0) + static_cast<double>(z_) * (d_ + x) - z_pow_;
    return num / den;
  }

  /// min over integer k in [1, z]. The ratio is affine over concave in k, so
  /// it is unimodal; ternary search, then a short scan around the result.
  std::pair<std::int64_t, double> inner_min(double x) const {
    std::int64_t lo = 1, hi = z_;
    while (hi - lo > 6) {
      const std::int64_t m1 = lo + (hi - lo) / 3;
      const std::int64_t m2 = hi - (hi - lo) / 3;
      const double f1 = value(m1, x), f2 = value(m2, x);
      if (f1 < f2) hi = m2 - 1;
      else if (f1 > f2) lo = m1 + 1;
      else {
        lo = m1;
        hi = m2;
      }
    }
    std::int64_t best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t k = std::max<std::int64_t>(1, lo - 2); k <= std::min(z_, hi + 2); ++k) {
      const double v = value(k, x);
      if (v < best) {
        best = v;
        best_k = k;
      }
    }
    return {best_k, best};
  }

  LowerBoundCurvePoint point(double x) const {
    auto [k, v] = inner_min(x);
    return {alpha_, z_, x, k, v};
  }

 private:
  double alpha_;
  std::int64_t z_;
  const std::vector<double>& pow_;
  double z_pow_ = 0.0, d_ = 0.0, x_max_ = 0.0;
};

inline std::vector<double> pow_table(double alpha, std::int64_t n) {
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), alpha);
  return t;
}

inline LowerBoundResult eval_general_lower_bound(double alpha, const LowerBoundOptions& opt = {}) {
  if (!(alpha >= 2.0)) throw DomainError("lower-bound evaluation needs alpha >= 2");
  if (opt.z_max < 1) throw DomainError("z_max must be >= 1");
  if (opt.x_grid < 2) throw DomainError("x_grid must be >= 2");

  const auto table = pow_table(alpha, opt.z_max);
  const auto nz = static_cast<std::size_t>(opt.z_max);
  const auto nx = static_cast<std::size_t>(opt.x_grid);
  LowerBoundResult res;
  res.alpha = alpha;
  res.per_z.resize(nz);
  if (opt.keep_grid) res.grid.resize(nz * nx);

  parallel_for(nz, [&](std::size_t zi) {
    const LowerBoundSlice slice(alpha, static_cast<std::int64_t>(zi) + 1, table);
    const double xm = slice.x_max();
    LowerBoundCurvePoint best;
    best.value = -std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 1; j <= nx; ++j) {
      const auto p = slice.point(xm * static_cast<double>(j) / static_cast<double>(nx));
      if (opt.keep_grid) res.grid[zi * nx + (j - 1)] = p;
      if (p.value > best.value) {
        best = p;
        best_j = j;
      }
    }
    if (opt.refine) {
      double a = xm * static_cast<double>(best_j - 1) / static_cast<double>(nx);
      double b = xm * static_cast<double>(std::min(best_j + 1, nx)) / static_cast<double>(nx);
      const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
      auto pc = slice.point(c), pd = slice.point(d);
      for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, xm); ++it) {
        if (pc.value > pd.value) {
          b = d;
          d = c;
          pd = pc;
          c = b - inv_phi * (b - a);
          pc = slice.point(c);
        } else {
          a = c;
          c = d;
          pc = pd;
          d = a + inv_phi * (b - a);
          pd = slice.point(d);
        }
      }
      for (const auto& p : {pc, pd})
        if (p.value > best.value && p.x > 0.0) best = p;
    }
    res.per_z[zi] = best;
  });

  res.best = res.per_z.front();
  for (const auto& p : res.per_z)
    if (p.value > res.best.value) res.best = p;
  return res;
}

}  // namespace speedscale
