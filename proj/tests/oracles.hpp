#pragma once

// Independent oracles the tests and the acceptance suite check against:
// brute-force dominance, full-hull construction, dense-grid regret, naive
// column maxima, exhaustive subset search, and adaptive Simpson quadrature.
// These deliberately avoid the library's own algorithmic paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/rng.hpp"
#include "rmskit/smawk.hpp"

namespace oracles {

// O(n^2) pairwise skyline; exact duplicates keep the lowest id.
inline std::vector<int> skyline_bruteforce(const rmskit::Dataset& ds) {
  std::vector<int> out;
  for (int i = 0; i < ds.size(); ++i) {
    bool dead = false;
    for (int j = 0; j < ds.size() && !dead; ++j) {
      if (i == j) continue;
      if (rmskit::dominates(ds[j], ds[i])) dead = true;
      if (ds[j].coords == ds[i].coords && ds[j].id < ds[i].id) dead = true;
    }
    if (!dead) out.push_back(ds[i].id);
  }
  return out;
}

// Full upper hull (Andrew's chain over all points), then Pareto-filtered to
// the portion optimal under nonnegative weights, sorted by x.
inline std::vector<rmskit::Point> upper_right_hull_oracle(const rmskit::Dataset& ds) {
  std::vector<rmskit::Point> pts = ds.points;
  std::sort(pts.begin(), pts.end(), [](const rmskit::Point& a, const rmskit::Point& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  auto cross = [](const rmskit::Point& o, const rmskit::Point& a, const rmskit::Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<rmskit::Point> upper;
  for (const auto& p : pts) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) >= 0.0)
      upper.pop_back();
    upper.push_back(p);
  }
  std::vector<rmskit::Point> out;
  for (const auto& v : upper) {
    bool dominated = false;
    for (const auto& p : ds.points)
      if (rmskit::dominates(p, v)) { dominated = true; break; }
    if (!dominated) out.push_back(v);
  }
  return out;
}

// Max 1-regret over a dense alpha grid (2D only).
inline double regret_grid_2d(const rmskit::Dataset& ds, const std::vector<rmskit::Point>& sel,
                             int steps) {
  double worst = 0.0;
  for (int t = 0; t <= steps; ++t) {
    double alpha = static_cast<double>(t) / steps;
    auto val = [&](const rmskit::Point& p) { return alpha * p[0] + (1 - alpha) * p[1]; };
    double dmax = 0.0, smax = 0.0;
    for (const auto& p : ds.points) dmax = std::max(dmax, val(p));
    for (const auto& p : sel) smax = std::max(smax, val(p));
    if (dmax > 0.0) worst = std::max(worst, 1.0 - smax / dmax);
  }
  return worst;
}

// k-happiness at one utility, straight from the definitions (own sort).
inline double khapp_at(const rmskit::Dataset& ds, const std::vector<rmskit::Point>& sel, int k,
                       const rmskit::UtilityVector& w) {
  std::vector<double> scores;
  scores.reserve(ds.points.size());
  for (const auto& p : ds.points) scores.push_back(rmskit::score(p, w));
  std::sort(scores.begin(), scores.end(), std::greater<>());
  double denom = scores[static_cast<std::size_t>(k - 1)];
  if (denom <= 0.0) return 1.0;
  double num = 0.0;
  for (const auto& p : sel) num = std::max(num, rmskit::score(p, w));
  return std::min(1.0, num / denom);
}

inline double khapp_over(const rmskit::Dataset& ds, const std::vector<rmskit::Point>& sel, int k,
                         const std::vector<rmskit::UtilityVector>& ws) {
  double worst = 1.0;
  for (const auto& w : ws) worst = std::min(worst, khapp_at(ds, sel, k, w));
  return worst;
}

// All r-subsets of ids, scored by a callback; returns the best value.
inline double best_subset_value(const std::vector<int>& ids, int r,
                                const std::function<double(const std::vector<int>&)>& value) {
  std::vector<int> combo(static_cast<std::size_t>(r));
  std::function<double(int, int)> rec = [&](int start, int depth) -> double {
    if (depth == r) return value(combo);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = start; i <= static_cast<int>(ids.size()) - (r - depth); ++i) {
      combo[static_cast<std::size_t>(depth)] = ids[static_cast<std::size_t>(i)];
      best = std::max(best, rec(i + 1, depth + 1));
    }
    return best;
  };
  return rec(0, 0);
}

// Naive column maxima with the last-row tie rule.
inline std::vector<std::size_t> column_maxima_naive(const rmskit::MatrixOracle& m) {
  std::vector<std::size_t> out(m.cols, 0);
  for (std::size_t c = 0; c < m.cols; ++c) {
    double best = m.entry(0, c);
    std::size_t arg = 0;
    for (std::size_t r = 1; r < m.rows; ++r) {
      double v = m.entry(r, c);
      if (v >= best) { best = v; arg = r; }
    }
    out[c] = arg;
  }
  return out;
}

// Random inverse-Monge matrix: 2D prefix sums of a nonnegative integer
// density plus row/column offsets (both Monge-preserving). Integer values
// keep ties frequent so the tie rule is exercised.
inline std::vector<std::vector<double>> random_inverse_monge(rmskit::PortableRng& rng,
                                                             std::size_t rows, std::size_t cols) {
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double dens = static_cast<double>(rng.next() % 4);
      m[i][j] = dens + (i ? m[i - 1][j] : 0.0) + (j ? m[i][j - 1] : 0.0) -
                (i && j ? m[i - 1][j - 1] : 0.0);
    }
  std::vector<double> row_off(rows), col_off(cols);
  for (auto& v : row_off) v = static_cast<double>(rng.next() % 64);
  for (auto& v : col_off) v = static_cast<double>(rng.next() % 64);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] += row_off[i] + col_off[j];
  return m;
}

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_rec(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

inline double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = detail::simpson(a, b, fa, fm, fb);
  return detail::adaptive_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Continuous uniform-density AHR of a point set by quadrature over alpha.
// The integrand is piecewise smooth with kinks only where two dual lines
// cross, so integration is split at every pairwise crossing first; adaptive
// Simpson then converges on each smooth piece.
inline double ahr_quadrature(const rmskit::Dataset& ds, const std::vector<rmskit::Point>& sel,
                             double tol) {
  auto ratio = [&](double alpha) {
    double dmax = 0.0, smax = 0.0;
    for (const auto& p : ds.points)
      dmax = std::max(dmax, alpha * p[0] + (1 - alpha) * p[1]);
    for (const auto& p : sel) smax = std::max(smax, alpha * p[0] + (1 - alpha) * p[1]);
    return dmax > 0.0 ? smax / dmax : 1.0;
  };
  std::vector<rmskit::Point> all = ds.points;
  all.insert(all.end(), sel.begin(), sel.end());
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      double dy = all[i][1] - all[j][1];
      double den = dy - (all[i][0] - all[j][0]);
      if (den == 0.0) continue;
      double alpha = dy / den;
      if (alpha > 0.0 && alpha < 1.0) cuts.push_back(alpha);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t t = 1; t < cuts.size(); ++t) {
    if (cuts[t] > cuts[t - 1])
      acc += adaptive_quadrature(ratio, cuts[t - 1], cuts[t], tol);
  }
  return acc;
}

}  // namespace oracles
