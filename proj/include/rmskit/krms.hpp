#pragma once

// k-RMS solvers. greedy_1rms is the classic LP-driven insertion heuristic
// (the pipeline target for the reduction schemes); ptas_search is the
// desk-scale scheme: reduce, exhaustively enumerate r-combinations of the
// reduced points, evaluate each against the original dataset, map back.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/reduction.hpp"

namespace rmskit {

struct GreedyResult {
  Selection sel;
  RegretReport final_regret;
  std::vector<double> regret_trace;  // max regret before each insertion
};

// Starts from the point with the best first coordinate, then repeatedly
// inserts the point realizing the current maximum regret. Stops once the
// regret falls below 1e-9 or r points are selected; with the zero-regret
// stop the selection never outgrows the set of points that matter.
inline GreedyResult greedy_1rms(const Dataset& ds, int r) {
  if (r < 1) throw std::invalid_argument("greedy_1rms: r must be >= 1");
  ds.validate();
  int cap = std::min(r, ds.size());

  int first = 0;
  for (int i = 1; i < ds.size(); ++i)
    if (ds[i][0] > ds[first][0]) first = i;

  GreedyResult out;
  std::vector<Point> sel_pts{ds[first]};
  std::vector<int> ids{ds[first].id};
  while (static_cast<int>(ids.size()) < cap) {
    RegretReport rep = max_regret_lp(ds, std::span<const Point>(sel_pts));
    out.regret_trace.push_back(rep.value);
    if (rep.value < 1e-9) break;
    ids.push_back(rep.witness_point);
    sel_pts.push_back(selection_points(ds, Selection({rep.witness_point}))[0]);
  }
  out.sel = Selection(std::move(ids));
  out.final_regret = max_regret_lp(ds, std::span<const Point>(sel_pts));
  return out;
}

enum class PtasEvaluator { Lp, Grid };

struct PtasConfig {
  ReductionMode mode = ReductionMode::Additive;
  double epsilon = 0.1;
  int k = 1;
  PtasEvaluator evaluator = PtasEvaluator::Lp;
  int grid_resolution = 32;  // per-axis resolution of the evaluation lattice
  std::uint64_t combination_budget = 10'000'000;

  void validate() const {
    ReductionConfig{mode, epsilon}.validate();
    if (k < 1) throw std::invalid_argument("ptas: k must be >= 1");
    if (evaluator == PtasEvaluator::Lp && k != 1)
      throw std::invalid_argument("ptas: lp evaluator requires k = 1");
    if (evaluator == PtasEvaluator::Grid && grid_resolution < 10)
      throw std::invalid_argument("ptas: grid resolution must be >= 10");
  }
};

struct PtasResult {
  Selection sel;          // mapped back to original ids
  double happiness = 0.0; // happiness of sel under the configured evaluator
  int reduced_size = 0;
  std::uint64_t combinations = 0;
  PtasEvaluator evaluator = PtasEvaluator::Lp;
};

namespace detail {

inline std::uint64_t combination_count(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // c * (n - r + i) / i, watching for overflow against the cap
    long double next = static_cast<long double>(c) * (n - r + i) / i;
    if (next > static_cast<long double>(cap) * 2.0L)
      return cap + 1;  // definitely over budget
    c = c * (n - r + i) / i;
  }
  return c;
}

// Happiness of a candidate point set against the original dataset under the
// fixed k and grid, with per-utility denominators precomputed.
class GridEvaluator {
 public:
  GridEvaluator(const Dataset& ds, int k, std::vector<UtilityVector> grid)
      : grid_(std::move(grid)) {
    denom_.reserve(grid_.size());
    for (const UtilityVector& w : grid_) denom_.push_back(kth_best_score(ds, w, k).first);
  }

  double operator()(std::span<const Point> pts) const {
    double worst = 1.0;
    for (std::size_t t = 0; t < grid_.size(); ++t) {
      if (denom_[t] <= 0.0) continue;
      double num = 0.0;
      for (const Point& q : pts) num = std::max(num, score(q, grid_[t]));
      worst = std::min(worst, std::min(1.0, num / denom_[t]));
    }
    return worst;
  }

 private:
  std::vector<UtilityVector> grid_;
  std::vector<double> denom_;
};

}  // namespace detail

// Exhaustive search over r-combinations of the reduced dataset. Enumeration
// is lexicographic by reduced id and the first-found maximum is kept, so the
// result is deterministic. Throws if the combination count exceeds the
// configured budget.
inline PtasResult ptas_search(const Dataset& ds, int r, const PtasConfig& cfg) {
  cfg.validate();
  ds.validate();
  if (r < 1) throw std::invalid_argument("ptas: r must be >= 1");

  PtasResult out;
  out.evaluator = cfg.evaluator;

  if (r >= ds.size()) {
    std::vector<int> all;
    all.reserve(ds.points.size());
    for (const Point& p : ds.points) all.push_back(p.id);
    out.sel = Selection(std::move(all));
    out.happiness = 1.0;
    out.reduced_size = ds.size();
    out.combinations = 1;
    return out;
  }

  ReducedDataset rd = reduce(ds, ReductionConfig{cfg.mode, cfg.epsilon});
  int m = rd.reduced.size();
  int rr = std::min(r, m);
  out.reduced_size = m;

  std::uint64_t combos = detail::combination_count(static_cast<std::uint64_t>(m),
                                                   static_cast<std::uint64_t>(rr),
                                                   cfg.combination_budget);
  if (combos > cfg.combination_budget)
    throw std::runtime_error("ptas: combination budget exceeded (" + std::to_string(m) +
                             " choose " + std::to_string(rr) +
                             "); increase epsilon or the budget");
  out.combinations = combos;

  std::optional<detail::GridEvaluator> grid_eval;
  if (cfg.evaluator == PtasEvaluator::Grid)
    grid_eval.emplace(ds, cfg.k, simplex_grid(ds.dim, cfg.grid_resolution));

  auto combo_value = [&](std::span<const Point> pts) {
    return grid_eval ? (*grid_eval)(pts) : 1.0 - max_regret_lp(ds, pts).value;
  };

  std::vector<int> combo(static_cast<std::size_t>(rr));
  for (int i = 0; i < rr; ++i) combo[static_cast<std::size_t>(i)] = i;
  std::vector<Point> pts(static_cast<std::size_t>(rr));

  double best_val = -1.0;
  std::vector<int> best_combo;
  for (;;) {
    for (int i = 0; i < rr; ++i)
      pts[static_cast<std::size_t>(i)] = rd.reduced[combo[static_cast<std::size_t>(i)]];
    double v = combo_value(pts);
    if (v > best_val) {
      best_val = v;
      best_combo = combo;
    }
    // next lexicographic combination
    int i = rr - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - rr + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < rr; ++j)
      combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }

  out.sel = map_back(Selection(best_combo), rd);
  auto mapped_pts = selection_points(ds, out.sel);
  out.happiness = combo_value(mapped_pts);
  return out;
}

}  // namespace rmskit
