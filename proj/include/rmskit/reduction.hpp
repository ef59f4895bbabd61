#pragma once

// Dataset reduction schemes: coordinates are rounded downward, either to
// multiples of eps/d (additive) or to powers of (1 - eps/2) with a zeroing
// threshold (multiplicative). Rounded duplicates merge, keeping a back-map
// from each surviving point to everything that rounded onto it.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "rmskit/core.hpp"

namespace rmskit {

enum class ReductionMode { Additive, Multiplicative };

struct ReductionConfig {
  ReductionMode mode = ReductionMode::Additive;
  double epsilon = 0.1;

  void validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
      throw std::invalid_argument("reduction: epsilon must lie in (0,1)");
  }
};

struct ReducedDataset {
  Dataset reduced;                          // deduplicated rounded points, ids 0..m-1
  std::vector<std::vector<int>> back_map;   // reduced id -> originating ids, ascending
  std::vector<int> origin_choice;           // reduced id -> original with max coordinate sum
};

// Greatest multiple of step not exceeding c, with one-step corrections so the
// multiple boundary is stable under floating-point division.
inline double floor_to_multiple(double c, double step) {
  double m = std::floor(c / step);
  if ((m + 1.0) * step <= c) m += 1.0;
  if (m * step > c) m -= 1.0;
  if (m <= 0.0) return 0.0;
  return m * step;
}

// Greatest power of base (0 < base < 1) not exceeding c if that power is at
// least floor_threshold, else 0. Coordinates of exactly 1 keep the zeroth
// power.
inline double floor_to_power(double c, double base, double floor_threshold) {
  if (c <= 0.0) return 0.0;
  if (c >= 1.0) return 1.0;
  double k = std::ceil(std::log(c) / std::log(base));
  if (k < 1.0) k = 1.0;
  while (std::pow(base, k) > c) k += 1.0;
  while (k > 1.0 && std::pow(base, k - 1.0) <= c) k -= 1.0;
  double v = std::pow(base, k);
  return v >= floor_threshold ? v : 0.0;
}

namespace detail {

template <typename RoundFn>
ReducedDataset reduce_with(const Dataset& ds, RoundFn&& round_coord) {
  ds.validate();
  ReducedDataset rd;
  std::map<std::vector<double>, int> seen;
  std::vector<double> best_sum;
  for (const Point& p : ds.points) {
    std::vector<double> rounded(p.coords.size());
    for (std::size_t j = 0; j < p.coords.size(); ++j) rounded[j] = round_coord(p.coords[j]);
    auto [it, fresh] = seen.try_emplace(rounded, static_cast<int>(rd.reduced.points.size()));
    std::size_t rid = static_cast<std::size_t>(it->second);
    if (fresh) {
      rd.reduced.points.push_back(Point{rounded, it->second});
      rd.back_map.emplace_back();
      rd.origin_choice.push_back(p.id);
      best_sum.push_back(p.coord_sum());
    } else {
      double s = p.coord_sum();
      if (s > best_sum[rid] || (s == best_sum[rid] && p.id < rd.origin_choice[rid])) {
        best_sum[rid] = s;
        rd.origin_choice[rid] = p.id;
      }
    }
    rd.back_map[rid].push_back(p.id);
  }
  rd.reduced.dim = ds.dim;
  for (auto& ids : rd.back_map) std::sort(ids.begin(), ids.end());
  return rd;
}

}  // namespace detail

inline ReducedDataset reduce_additive(const Dataset& ds, double epsilon) {
  ReductionConfig{ReductionMode::Additive, epsilon}.validate();
  double step = epsilon / ds.dim;
  return detail::reduce_with(ds, [step](double c) { return floor_to_multiple(c, step); });
}

inline ReducedDataset reduce_multiplicative(const Dataset& ds, double epsilon) {
  ReductionConfig{ReductionMode::Multiplicative, epsilon}.validate();
  double estar = epsilon / 2.0;
  double base = 1.0 - estar;
  double threshold = estar / ds.dim;
  return detail::reduce_with(
      ds, [base, threshold](double c) { return floor_to_power(c, base, threshold); });
}

inline ReducedDataset reduce(const Dataset& ds, const ReductionConfig& cfg) {
  cfg.validate();
  return cfg.mode == ReductionMode::Additive ? reduce_additive(ds, cfg.epsilon)
                                             : reduce_multiplicative(ds, cfg.epsilon);
}

// Replaces each reduced id with the originating point of maximum coordinate
// sum (ties toward the lower id, resolved at reduction time). Every
// originating point dominates its rounded image, so happiness never drops.
inline Selection map_back(const Selection& reduced_sel, const ReducedDataset& rd) {
  std::vector<int> out;
  out.reserve(reduced_sel.indices.size());
  for (int rid : reduced_sel.indices) {
    if (rid < 0 || rid >= static_cast<int>(rd.origin_choice.size()))
      throw std::invalid_argument("map_back: reduced id out of range");
    out.push_back(rd.origin_choice[static_cast<std::size_t>(rid)]);
  }
  return Selection(std::move(out));
}

// Worst-case size of the additive reduction: (d/eps + 1)^d.
inline double additive_size_bound(int d, double epsilon) {
  return std::pow(static_cast<double>(d) / epsilon + 1.0, d);
}

// Worst-case size of the multiplicative reduction:
// (log_{1-eps/2}(eps/(2d)) + 2)^d.
inline double multiplicative_size_bound(int d, double epsilon) {
  double base = 1.0 - epsilon / 2.0;
  double levels = std::log(epsilon / (2.0 * d)) / std::log(base) + 2.0;
  return std::pow(levels, d);
}

}  // namespace rmskit
