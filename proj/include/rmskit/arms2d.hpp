#pragma once

// Exact and additively approximate ARMS for linear utilities in d = 2 under
// the uniform utility density. Points dualize to lines whose height at
// alpha equals the score under w = (alpha, 1-alpha); the dataset's hull
// induces an upper envelope whose per-segment happiness integrals have a
// closed form. Selection quality decomposes into pairwise "gain" terms that
// satisfy the quadrangle inequality, so each DP layer is a SMAWK pass.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/reduction.hpp"
#include "rmskit/smawk.hpp"

namespace rmskit {

// Height of the dual line of p at x = alpha; equals score(p, (alpha,1-alpha)).
inline double dual_height(const Point& p, double alpha) {
  return p[1] + alpha * (p[0] - p[1]);
}

// x coordinate of the intersection of the duals of a and b. Parallel duals
// (equal slopes a_x - a_y and b_x - b_y) are an error.
inline double dual_intersection_x(const Point& a, const Point& b) {
  double dy = a[1] - b[1];
  double dslope = (a[0] - a[1]) - (b[0] - b[1]);
  if (dslope == 0.0)
    throw std::invalid_argument("dual_intersection_x: parallel duals (degenerate pair)");
  return dy / (dy - (a[0] - b[0]));
}

struct EnvelopeIndex {
  std::vector<Point> hull;          // p_1..p_c, increasing x, decreasing y
  std::vector<double> breakpoints;  // I_0 = 0, I_1..I_{c-1}, I_c = 1

  int size() const { return static_cast<int>(hull.size()); }
};

// Breakpoints of the upper envelope of the hull duals: consecutive dual
// intersections bracketed by 0 and 1. Rejects input that does not form a
// proper chain (non-monotone breakpoints).
inline EnvelopeIndex build_envelope(std::vector<Point> hull) {
  if (hull.empty()) throw std::invalid_argument("build_envelope: empty hull");
  EnvelopeIndex env;
  env.breakpoints.resize(hull.size() + 1);
  env.breakpoints.front() = 0.0;
  env.breakpoints.back() = 1.0;
  for (std::size_t t = 1; t < hull.size(); ++t) {
    double x = dual_intersection_x(hull[t - 1], hull[t]);
    if (x < -1e-12 || x > 1.0 + 1e-12 || x + 1e-12 < env.breakpoints[t - 1])
      throw std::invalid_argument("build_envelope: non-monotone breakpoints (non-hull input)");
    env.breakpoints[t] = std::min(1.0, std::max({0.0, x, env.breakpoints[t - 1]}));
  }
  env.hull = std::move(hull);
  return env;
}

namespace detail {

// Per-segment integral coefficients: for the envelope owner p over [a,b],
//   integral of (q . w_alpha)/(p . w_alpha) d alpha = slope_coef*(q_x - q_y)
//                                                   + height_coef*q_y.
// Written against log1p with a series fallback so nearly-flat denominators
// stay accurate.
struct SegCoef {
  double slope_coef = 0.0;
  double height_coef = 0.0;

  double apply(const Point& q) const { return slope_coef * (q[0] - q[1]) + height_coef * q[1]; }
};

inline SegCoef segment_coefficients(const Point& p, double a, double b) {
  if (b < a) {
    if (a - b > 1e-12) throw std::invalid_argument("happiness integral: reversed interval");
    b = a;
  }
  double dp = p[0] - p[1];
  double pa = p[1] + a * dp;
  double pb = p[1] + b * dp;
  if (pa <= 0.0 || pb <= 0.0)
    throw std::domain_error("happiness integral: denominator not positive on interval");
  double len = b - a;
  double t = len * dp / pa;
  SegCoef c;
  if (std::abs(t) < 1e-4) {
    // g(t) = (log1p(t) - t) / t^2
    double g = -0.5 + t / 3.0 - t * t / 4.0 + t * t * t / 5.0;
    double s = len / pa;
    c.slope_coef = len * a / pa - p[1] * s * s * g;
    c.height_coef = s + dp * s * s * g;
  } else {
    double lr = std::log1p(t);  // log(pb / pa)
    c.slope_coef = len / dp - p[1] * lr / (dp * dp);
    c.height_coef = lr / dp;
  }
  return c;
}

}  // namespace detail

// Closed form of the uniform-density happiness integral
//   F(q, p, a, b) = integral over [a,b] of (q . w_alpha)/(p . w_alpha).
inline double happiness_integral_F(const Point& q, const Point& p, double a, double b) {
  return detail::segment_coefficients(p, a, b).apply(q);
}

// Pairwise happiness gains over a candidate chain against a fixed dataset
// envelope. gain(i, j) is the increase in average happiness from adding
// candidate j when candidate i is the most recently added one (candidate 0
// is the synthetic empty-selection row), i.e. the envelope-normalized area
// between the two duals right of their intersection. Per-segment integral
// coefficients are linear in the numerator point, so only suffix sums over
// segments are stored and each gain evaluates in O(log c).
class HappinessGainMatrix {
 public:
  HappinessGainMatrix(const EnvelopeIndex& env, std::vector<Point> candidates)
      : env_(&env), cand_(std::move(candidates)) {
    if (cand_.empty()) throw std::invalid_argument("gain matrix: no candidates");
    for (std::size_t t = 1; t < cand_.size(); ++t)
      if (!(cand_[t - 1][0] < cand_[t][0]))
        throw std::invalid_argument("gain matrix: candidates must be sorted by increasing x");
    int c = env_->size();
    tail_slope_.assign(static_cast<std::size_t>(c) + 1, 0.0);
    tail_height_.assign(static_cast<std::size_t>(c) + 1, 0.0);
    for (int l = c; l >= 1; --l) {
      auto sc = detail::segment_coefficients(env_->hull[static_cast<std::size_t>(l - 1)],
                                             env_->breakpoints[static_cast<std::size_t>(l - 1)],
                                             env_->breakpoints[static_cast<std::size_t>(l)]);
      tail_slope_[static_cast<std::size_t>(l - 1)] = tail_slope_[static_cast<std::size_t>(l)] + sc.slope_coef;
      tail_height_[static_cast<std::size_t>(l - 1)] = tail_height_[static_cast<std::size_t>(l)] + sc.height_coef;
    }
  }

  int candidate_count() const { return static_cast<int>(cand_.size()); }
  const Point& candidate(int i) const { return cand_[static_cast<std::size_t>(i - 1)]; }

  // i in [0, j), j in [1, candidate_count()]
  double gain(int i, int j) const {
    const Point& qj = cand_[static_cast<std::size_t>(j - 1)];
    double x0 = 0.0;
    if (i > 0) {
      x0 = dual_intersection_x(cand_[static_cast<std::size_t>(i - 1)], qj);
      x0 = std::min(1.0, std::max(0.0, x0));
    }
    double cov_j = coverage_from(qj, x0);
    double cov_i = i > 0 ? coverage_from(cand_[static_cast<std::size_t>(i - 1)], x0) : 0.0;
    return std::max(0.0, cov_j - cov_i);
  }

  // Integral of (q . w_alpha)/envelope(alpha) over [x0, 1].
  double coverage_from(const Point& q, double x0) const {
    const auto& bp = env_->breakpoints;
    auto it = std::lower_bound(bp.begin() + 1, bp.end(), x0);
    std::size_t k = static_cast<std::size_t>(it - bp.begin());
    auto partial = detail::segment_coefficients(env_->hull[k - 1], x0, bp[k]);
    return partial.apply(q) + tail_slope_[k] * (q[0] - q[1]) + tail_height_[k] * q[1];
  }

  // Prefix sums S[i][k] = sum_{l=i..k} F(p_i, p_l, I_{l-1}, I_l) of the
  // exact algorithm (candidates == hull), reconstructed from the suffix
  // arrays. Exposed for verification.
  double prefix_sum(int i, int k) const {
    const Point& q = cand_[static_cast<std::size_t>(i - 1)];
    auto tail_at = [&](std::size_t t) {
      return tail_slope_[t] * (q[0] - q[1]) + tail_height_[t] * q[1];
    };
    return tail_at(static_cast<std::size_t>(i - 1)) - tail_at(static_cast<std::size_t>(k));
  }

  // Square oracle over rows/cols 0..candidate_count() with the below-diagonal
  // filler that keeps the full matrix inverse Monge.
  MatrixOracle as_oracle() const {
    std::size_t n = static_cast<std::size_t>(candidate_count()) + 1;
    return MatrixOracle{n, n, [this](std::size_t i, std::size_t j) {
                          if (i < j) return gain(static_cast<int>(i), static_cast<int>(j));
                          return static_cast<double>(j) - static_cast<double>(i);
                        }};
  }

 private:
  const EnvelopeIndex* env_;
  std::vector<Point> cand_;
  std::vector<double> tail_slope_, tail_height_;  // suffix sums over segments
};

// compute_H per the layered algorithm: envelope segments from the dataset
// hull, gains restricted to the candidate chain (the full hull for the exact
// algorithm, the re-hulled reduced points for the approximation).
inline HappinessGainMatrix compute_H(const EnvelopeIndex& env, std::vector<Point> candidates) {
  return HappinessGainMatrix(env, std::move(candidates));
}

namespace detail {

struct DpOutcome {
  std::vector<int> chain;  // candidate positions, ascending
  double value = 0.0;
};

// D[k][j] = max_{0 <= i < j} D[k-1][i] + gain(i,j), one SMAWK pass per layer.
// D[.][0] stays 0 (the empty prefix), so every column is feasible at every
// layer and the oracle, including the below-diagonal filler, remains inverse
// Monge. Gains along a hull chain are strictly positive, so the optimum uses
// its full budget whenever it helps.
inline DpOutcome happiness_dp(const HappinessGainMatrix& H, int r) {
  const int c = H.candidate_count();
  const int kmax = std::min(r, c);

  std::vector<std::vector<int>> parent(static_cast<std::size_t>(kmax) + 1,
                                       std::vector<int>(static_cast<std::size_t>(c) + 1, 0));
  std::vector<double> dprev(static_cast<std::size_t>(c) + 1, 0.0);
  for (int j = 1; j <= c; ++j) dprev[static_cast<std::size_t>(j)] = H.gain(0, j);

  std::vector<double> dcur(static_cast<std::size_t>(c) + 1, 0.0);
  for (int k = 2; k <= kmax; ++k) {
    MatrixOracle oracle{static_cast<std::size_t>(c) + 1, static_cast<std::size_t>(c),
                        [&](std::size_t i, std::size_t jcol) {
                          std::size_t j = jcol + 1;
                          if (i < j) return dprev[i] + H.gain(static_cast<int>(i), static_cast<int>(j));
                          return static_cast<double>(j) - static_cast<double>(i);
                        }};
    auto arg = smawk_column_maxima(oracle);
    for (int j = 1; j <= c; ++j) {
      int i = static_cast<int>(arg[static_cast<std::size_t>(j - 1)]);
      dcur[static_cast<std::size_t>(j)] = dprev[static_cast<std::size_t>(i)] + H.gain(i, j);
      parent[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = i;
    }
    dprev.swap(dcur);
  }

  int jstar = 1;
  for (int j = 2; j <= c; ++j)
    if (dprev[static_cast<std::size_t>(j)] > dprev[static_cast<std::size_t>(jstar)]) jstar = j;

  DpOutcome out;
  out.value = dprev[static_cast<std::size_t>(jstar)];
  int j = jstar;
  for (int k = kmax; k >= 1 && j != 0; --k) {
    out.chain.push_back(j);
    j = parent[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }
  std::reverse(out.chain.begin(), out.chain.end());
  return out;
}

}  // namespace detail

struct Arms2dResult {
  Selection sel;             // original point ids, increasing x
  double ahr = 0.0;          // average happiness of sel (uniform density)
  double dp_value = 0.0;     // optimum found in candidate space
  int hull_size = 0;         // c
  int candidate_count = 0;   // c' (== c for the exact algorithm)
  double hull_ms = 0.0, gain_ms = 0.0, dp_ms = 0.0, eval_ms = 0.0;
};

namespace detail {

inline double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

// Exact AHR of an arbitrary point set against a prebuilt dataset envelope:
// build the selection's own envelope and integrate the ratio piecewise.
// Independent of the gain/DP machinery.
inline double ahr_against_envelope(const EnvelopeIndex& env, const std::vector<Point>& sel_pts) {
  Dataset sel_ds = Dataset::from_points(sel_pts);
  EnvelopeIndex sel_env = build_envelope(convex_hull_2d(sel_ds));
  double acc = 0.0;
  std::size_t si = 1, di = 1;
  double a = 0.0;
  while (si < sel_env.breakpoints.size() && di < env.breakpoints.size()) {
    double b = std::min(sel_env.breakpoints[si], env.breakpoints[di]);
    if (b > a)
      acc += happiness_integral_F(sel_env.hull[si - 1], env.hull[di - 1], a, b);
    if (sel_env.breakpoints[si] <= b) ++si;
    if (env.breakpoints[di] <= b) ++di;
    a = b;
  }
  return acc;
}

}  // namespace detail

// Exact AHR of a selection for linear utilities in d = 2, uniform density.
inline double ahr_of_selection(const Dataset& ds, const Selection& sel) {
  if (ds.dim != 2) throw std::invalid_argument("ahr_of_selection: dataset must be 2-dimensional");
  EnvelopeIndex env = build_envelope(convex_hull_2d(ds));
  auto pts = selection_points(ds, sel);
  return detail::ahr_against_envelope(env, pts);
}

// Exact ARMS: hull of the skyline, pairwise gains, r-1 SMAWK passes.
inline Arms2dResult exact_2d_arms(const Dataset& ds, int r) {
  if (ds.dim != 2) throw std::invalid_argument("exact_2d_arms: dataset must be 2-dimensional");
  if (r < 1) throw std::invalid_argument("exact_2d_arms: r must be >= 1");

  Arms2dResult out;
  double t0 = detail::now_ms();
  std::vector<Point> hull = convex_hull_2d(ds);
  EnvelopeIndex env = build_envelope(hull);
  out.hull_size = env.size();
  out.candidate_count = env.size();
  double t1 = detail::now_ms();
  HappinessGainMatrix H = compute_H(env, hull);
  double t2 = detail::now_ms();
  detail::DpOutcome dp = detail::happiness_dp(H, r);
  double t3 = detail::now_ms();

  std::vector<int> ids;
  ids.reserve(dp.chain.size());
  for (int pos : dp.chain) ids.push_back(H.candidate(pos).id);
  out.sel = Selection(std::move(ids));
  out.dp_value = dp.value;
  out.ahr = dp.value;
  out.hull_ms = t1 - t0;
  out.gain_ms = t2 - t1;
  out.dp_ms = t3 - t2;
  return out;
}

// Additive eps-approximation: round the hull points downward, re-hull the
// rounded points to get the candidate chain, run the same DP against the
// original envelope, then map each candidate back to the originating point
// with the largest coordinate sum.
inline Arms2dResult approx_2d_arms(const Dataset& ds, int r, double epsilon) {
  if (ds.dim != 2) throw std::invalid_argument("approx_2d_arms: dataset must be 2-dimensional");
  if (r < 1) throw std::invalid_argument("approx_2d_arms: r must be >= 1");
  ReductionConfig{ReductionMode::Additive, epsilon}.validate();

  Arms2dResult out;
  double t0 = detail::now_ms();
  std::vector<Point> hull = convex_hull_2d(ds);
  EnvelopeIndex env = build_envelope(hull);
  out.hull_size = env.size();
  double t1 = detail::now_ms();

  Dataset hull_ds = Dataset::from_points(hull);
  ReducedDataset rd = reduce_additive(hull_ds, epsilon);
  std::vector<Point> candidates = convex_hull_2d(rd.reduced);
  out.candidate_count = static_cast<int>(candidates.size());

  HappinessGainMatrix H = compute_H(env, candidates);
  double t2 = detail::now_ms();
  detail::DpOutcome dp = detail::happiness_dp(H, r);
  double t3 = detail::now_ms();

  std::vector<int> reduced_ids;
  reduced_ids.reserve(dp.chain.size());
  for (int pos : dp.chain) reduced_ids.push_back(H.candidate(pos).id);
  out.sel = map_back(Selection(std::move(reduced_ids)), rd);
  out.dp_value = dp.value;

  auto mapped = selection_points(ds, out.sel);
  out.ahr = detail::ahr_against_envelope(env, mapped);
  double t4 = detail::now_ms();
  out.hull_ms = t1 - t0;
  out.gain_ms = t2 - t1;
  out.dp_ms = t3 - t2;
  out.eval_ms = t4 - t3;
  return out;
}

}  // namespace rmskit
