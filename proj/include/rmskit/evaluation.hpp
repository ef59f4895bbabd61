#pragma once

// Regret / happiness metrics for a selection against a dataset:
//  - exact maximum 1-regret via per-candidate linear programs,
//  - grid or sample based k-happiness lower bounds for general k,
//  - weighted average happiness/regret over a sampled set of utility
//    functions (linear fast path, opaque callbacks otherwise).

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/simplex.hpp"

namespace rmskit {

inline constexpr double kLpTol = 1e-7;

struct RegretReport {
  double value = 0.0;        // maximum 1-regret ratio, in [0,1]
  UtilityVector witness;     // L1-normalized maximizer
  int witness_point = -1;    // point realizing the regret
};

struct FunctionSample {
  struct Entry {
    std::vector<double> weights;               // linear fast path when non-empty
    std::function<double(const Point&)> fn;    // used when weights is empty
    double prob = 0.0;

    double operator()(const Point& p) const {
      if (!weights.empty()) {
        if (p.dim() != static_cast<int>(weights.size()))
          throw std::invalid_argument("function sample: dimension mismatch");
        double s = 0.0;
        for (int j = 0; j < p.dim(); ++j) s += p[j] * weights[static_cast<std::size_t>(j)];
        return s;
      }
      return fn(p);
    }
  };

  std::vector<Entry> entries;

  int size() const { return static_cast<int>(entries.size()); }

  bool all_linear() const {
    for (const Entry& e : entries)
      if (e.weights.empty()) return false;
    return true;
  }

  void validate() const {
    if (entries.empty()) throw std::invalid_argument("function sample: empty");
    double s = 0.0;
    for (const Entry& e : entries) {
      if (e.prob < 0.0) throw std::invalid_argument("function sample: negative probability");
      s += e.prob;
    }
    if (std::abs(s - 1.0) > kFloatTol)
      throw std::invalid_argument("function sample: probabilities sum to " + std::to_string(s));
  }

  static FunctionSample uniform_linear(const std::vector<UtilityVector>& ws) {
    FunctionSample fs;
    double p = 1.0 / static_cast<double>(ws.size());
    for (const UtilityVector& w : ws) fs.entries.push_back(Entry{w.weights, nullptr, p});
    fs.validate();
    return fs;
  }

  static FunctionSample weighted_linear(const std::vector<UtilityVector>& ws,
                                        const std::vector<double>& probs) {
    if (ws.size() != probs.size())
      throw std::invalid_argument("function sample: weight/probability count mismatch");
    FunctionSample fs;
    for (std::size_t i = 0; i < ws.size(); ++i)
      fs.entries.push_back(Entry{ws[i].weights, nullptr, probs[i]});
    fs.validate();
    return fs;
  }
};

// Number of lattice points the simplex grid would contain: C(m+d-1, d-1).
inline std::uint64_t simplex_grid_size(int d, int resolution) {
  std::uint64_t c = 1;
  for (int i = 1; i <= d - 1; ++i) {
    c = c * (static_cast<std::uint64_t>(resolution) + static_cast<std::uint64_t>(i)) /
        static_cast<std::uint64_t>(i);
    if (c > (1ULL << 40)) return c;  // far past any sane size; stop multiplying
  }
  return c;
}

// Deterministic lattice over the weight simplex: all nonnegative integer
// compositions of `resolution` into d parts, scaled to sum 1, in
// lexicographic order.
inline std::vector<UtilityVector> simplex_grid(int d, int resolution) {
  if (d < 1 || resolution < 1) throw std::invalid_argument("simplex_grid: bad arguments");
  if (simplex_grid_size(d, resolution) > 50'000'000ULL)
    throw std::invalid_argument("simplex_grid: lattice would exceed 5e7 points; lower the resolution");
  std::vector<UtilityVector> out;
  std::vector<int> comp(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == d - 1) {
      comp[static_cast<std::size_t>(j)] = left;
      std::vector<double> w(static_cast<std::size_t>(d));
      for (int t = 0; t < d; ++t)
        w[static_cast<std::size_t>(t)] =
            static_cast<double>(comp[static_cast<std::size_t>(t)]) / resolution;
      out.push_back(UtilityVector(std::move(w), true));
      return;
    }
    for (int v = left; v >= 0; --v) {
      comp[static_cast<std::size_t>(j)] = v;
      rec(j + 1, left - v);
    }
  };
  rec(0, resolution);
  return out;
}

namespace detail {

// Regret contribution of candidate p against the selection:
//   maximize x  s.t.  w.(p - q) >= x for all q in sel,  w.p = 1,  w, x >= 0.
// Returns the optimum and the (unscaled) maximizing w; infeasible means the
// clamped contribution is 0.
inline bool candidate_regret_lp(const Point& p, std::span<const Point> sel, double& value,
                                std::vector<double>& w_out) {
  int d = p.dim();
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  A.reserve(sel.size() + 2);
  // -w.(p - q) + x <= 0
  for (const Point& q : sel) {
    std::vector<double> row(static_cast<std::size_t>(d) + 1, 0.0);
    for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(j)] = q[j] - p[j];
    row[static_cast<std::size_t>(d)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(0.0);
  }
  // w.p = 1 as two inequalities
  std::vector<double> eq(static_cast<std::size_t>(d) + 1, 0.0);
  for (int j = 0; j < d; ++j) eq[static_cast<std::size_t>(j)] = p[j];
  A.push_back(eq);
  b.push_back(1.0);
  for (double& v : eq) v = -v;
  A.push_back(std::move(eq));
  b.push_back(-1.0);

  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c[static_cast<std::size_t>(d)] = 1.0;

  auto res = DenseSimplex::maximize(A, b, c);
  if (res.status != DenseSimplex::Status::Optimal) return false;
  value = res.objective;
  w_out.assign(res.x.begin(), res.x.begin() + d);
  return true;
}

}  // namespace detail

// Exact maximum 1-regret ratio of the selection, the maximizing utility
// (L1-normalized) and the point realizing it. Selection points may be
// arbitrary (e.g. rounded surrogates); the dataset supplies the competition.
inline RegretReport max_regret_lp(const Dataset& ds, std::span<const Point> sel_points) {
  if (sel_points.empty()) throw std::invalid_argument("max_regret_lp: empty selection");
  for (const Point& q : sel_points)
    if (q.dim() != ds.dim) throw std::invalid_argument("max_regret_lp: dimension mismatch");

  RegretReport best;
  best.value = 0.0;
  std::vector<double> w;
  for (const Point& p : ds.points) {
    double val = 0.0;
    if (!detail::candidate_regret_lp(p, sel_points, val, w)) continue;
    if (val > best.value + 0.0) {
      best.value = val;
      best.witness_point = p.id;
      best.witness = UtilityVector::simplex(w);
    }
  }
  if (best.value <= 0.0) {
    // selection already covers every utility: report a canonical witness
    best.value = 0.0;
    std::vector<double> uni(static_cast<std::size_t>(ds.dim), 1.0 / ds.dim);
    best.witness = UtilityVector(std::move(uni), true);
    best.witness_point = kth_best_score(ds, best.witness, 1).second;
  }
  return best;
}

inline RegretReport max_regret_lp(const Dataset& ds, const Selection& sel) {
  auto pts = selection_points(ds, sel);
  return max_regret_lp(ds, std::span<const Point>(pts));
}

// Minimum over the sampled utilities of the clamped ratio between the best
// selection score and the k-th best dataset score. A zero k-th best score
// makes the constraint vacuous (ratio 1).
inline double khapp_grid(const Dataset& ds, std::span<const Point> sel_points, int k,
                         std::span<const UtilityVector> sample) {
  if (sel_points.empty()) throw std::invalid_argument("khapp_grid: empty selection");
  if (sample.empty()) throw std::invalid_argument("khapp_grid: empty sample");
  if (k < 1 || k > ds.size()) throw std::invalid_argument("khapp_grid: k out of range");
  double worst = 1.0;
  for (const UtilityVector& w : sample) {
    double denom = kth_best_score(ds, w, k).first;
    if (denom <= 0.0) continue;  // vacuous utility
    double num = 0.0;
    for (const Point& q : sel_points) num = std::max(num, score(q, w));
    worst = std::min(worst, std::min(1.0, num / denom));
  }
  return worst;
}

inline double khapp_grid(const Dataset& ds, const Selection& sel, int k,
                         std::span<const UtilityVector> sample) {
  auto pts = selection_points(ds, sel);
  return khapp_grid(ds, std::span<const Point>(pts), k, sample);
}

// Weighted average happiness of the selection over the sampled functions:
// sum of prob * min{1, best-in-sel / best-in-dataset}. Summation order is
// the entry order, so results are bitwise deterministic.
inline double ahr_sample(const Dataset& ds, std::span<const Point> sel_points,
                         const FunctionSample& sample) {
  if (sel_points.empty()) throw std::invalid_argument("ahr_sample: empty selection");
  sample.validate();
  double acc = 0.0;
  for (const auto& entry : sample.entries) {
    double dmax = -std::numeric_limits<double>::infinity();
    for (const Point& p : ds.points) dmax = std::max(dmax, entry(p));
    if (!(dmax > 0.0))
      throw std::invalid_argument("ahr_sample: sampled function with nonpositive dataset maximum");
    double smax = -std::numeric_limits<double>::infinity();
    for (const Point& q : sel_points) smax = std::max(smax, entry(q));
    acc += entry.prob * std::min(1.0, smax / dmax);
  }
  return acc;
}

inline double ahr_sample(const Dataset& ds, const Selection& sel, const FunctionSample& sample) {
  auto pts = selection_points(ds, sel);
  return ahr_sample(ds, std::span<const Point>(pts), sample);
}

inline double arr_sample(const Dataset& ds, const Selection& sel, const FunctionSample& sample) {
  return 1.0 - ahr_sample(ds, sel, sample);
}

// 1-regret of a selection at one fixed utility; used to cross-check reports.
inline double regret_at(const Dataset& ds, std::span<const Point> sel_points,
                        const UtilityVector& w) {
  double denom = kth_best_score(ds, w, 1).first;
  if (denom <= 0.0) return 0.0;
  double num = 0.0;
  for (const Point& q : sel_points) num = std::max(num, score(q, w));
  return std::max(0.0, 1.0 - num / denom);
}

}  // namespace rmskit
