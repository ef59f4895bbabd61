#pragma once

// Data model shared by every solver in the library: points carrying
// provenance ids, datasets over [0,1]^d, linear utility vectors, and index
// selections, together with the scoring / ranking / dominance / 2D hull
// primitives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmskit {

inline constexpr double kFloatTol = 1e-9;

struct Point {
  std::vector<double> coords;
  int id = -1;  // index into the source dataset

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int j) const { return coords[static_cast<std::size_t>(j)]; }

  double coord_sum() const {
    double s = 0.0;
    for (double c : coords) s += c;
    return s;
  }
};

// a weakly dominates b: no coordinate worse, at least one strictly better
inline bool dominates(const Point& a, const Point& b) {
  bool strict = false;
  for (int j = 0; j < a.dim(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) strict = true;
  }
  return strict;
}

struct Dataset {
  std::vector<Point> points;
  int dim = 0;

  Dataset() = default;

  // Rows become points with ids 0..n-1.
  static Dataset from_rows(const std::vector<std::vector<double>>& rows) {
    Dataset ds;
    ds.points.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      ds.points.push_back(Point{rows[i], static_cast<int>(i)});
    if (!rows.empty()) ds.dim = static_cast<int>(rows[0].size());
    ds.validate();
    return ds;
  }

  // Keeps the given points (and their provenance ids) as-is.
  static Dataset from_points(std::vector<Point> pts) {
    Dataset ds;
    ds.points = std::move(pts);
    if (!ds.points.empty()) ds.dim = ds.points[0].dim();
    ds.validate();
    return ds;
  }

  int size() const { return static_cast<int>(points.size()); }
  const Point& operator[](int i) const { return points[static_cast<std::size_t>(i)]; }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("dataset: must contain at least one point");
    if (dim < 1) throw std::invalid_argument("dataset: dimension must be >= 1");
    for (const Point& p : points) {
      if (p.dim() != dim)
        throw std::invalid_argument("dataset: point " + std::to_string(p.id) +
                                    " has mismatched dimension");
      for (double c : p.coords)
        if (!std::isfinite(c) || c < 0.0 || c > 1.0)
          throw std::invalid_argument("dataset: point " + std::to_string(p.id) +
                                      " has coordinate outside [0,1]");
    }
  }
};

struct UtilityVector {
  std::vector<double> weights;
  bool normalized = false;

  UtilityVector() = default;
  UtilityVector(std::vector<double> w, bool norm) : weights(std::move(w)), normalized(norm) {
    validate();
  }

  // Nonnegative weights, kept as given.
  static UtilityVector raw(std::vector<double> w) { return UtilityVector(std::move(w), false); }

  // L1-normalizes the weights and marks the vector normalized.
  static UtilityVector simplex(std::vector<double> w) {
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    if (s <= 0.0) throw std::invalid_argument("utility vector: weights must not all be zero");
    for (double& x : w) x /= s;
    return UtilityVector(std::move(w), true);
  }

  int dim() const { return static_cast<int>(weights.size()); }

  void validate() const {
    if (weights.empty()) throw std::invalid_argument("utility vector: empty");
    double s = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0)
        throw std::invalid_argument("utility vector: weights must be nonnegative");
      s += w;
    }
    if (normalized && std::abs(s - 1.0) > kFloatTol)
      throw std::invalid_argument("utility vector: normalized flag set but weights sum to " +
                                  std::to_string(s));
  }
};

struct Selection {
  std::vector<int> indices;  // point ids, in insertion order

  Selection() = default;
  explicit Selection(std::vector<int> ids) : indices(std::move(ids)) {
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("selection: indices must be distinct");
  }

  int size() const { return static_cast<int>(indices.size()); }
  bool contains(int id) const {
    return std::find(indices.begin(), indices.end(), id) != indices.end();
  }

  void validate_for(const Dataset& ds) const {
    for (int id : indices) {
      bool found = false;
      for (const Point& p : ds.points)
        if (p.id == id) { found = true; break; }
      if (!found)
        throw std::invalid_argument("selection: id " + std::to_string(id) + " not in dataset");
    }
  }
};

// Resolves selection ids to points of ds. Ids equal to row indices resolve in
// O(1); otherwise falls back to a scan.
inline std::vector<Point> selection_points(const Dataset& ds, const Selection& sel) {
  std::vector<Point> pts;
  pts.reserve(sel.indices.size());
  for (int id : sel.indices) {
    if (id >= 0 && id < ds.size() && ds[id].id == id) {
      pts.push_back(ds[id]);
      continue;
    }
    bool found = false;
    for (const Point& p : ds.points)
      if (p.id == id) { pts.push_back(p); found = true; break; }
    if (!found)
      throw std::invalid_argument("selection: id " + std::to_string(id) + " not in dataset");
  }
  return pts;
}

inline double score(const Point& p, const UtilityVector& w) {
  if (p.dim() != w.dim()) throw std::invalid_argument("score: dimension mismatch");
  double s = 0.0;
  for (int j = 0; j < p.dim(); ++j) s += p[j] * w.weights[static_cast<std::size_t>(j)];
  return s;
}

// Divides every dimension by its maximum so each per-dimension maximum
// becomes exactly 1. Not applied implicitly anywhere; callers opt in.
inline Dataset normalize_dataset(const Dataset& ds) {
  ds.validate();
  std::vector<double> maxima(static_cast<std::size_t>(ds.dim), 0.0);
  for (const Point& p : ds.points)
    for (int j = 0; j < ds.dim; ++j)
      maxima[static_cast<std::size_t>(j)] = std::max(maxima[static_cast<std::size_t>(j)], p[j]);
  for (int j = 0; j < ds.dim; ++j)
    if (maxima[static_cast<std::size_t>(j)] <= 0.0)
      throw std::invalid_argument("normalize: dimension " + std::to_string(j) +
                                  " has maximum 0");
  Dataset out = ds;
  for (Point& p : out.points)
    for (int j = 0; j < ds.dim; ++j)
      p.coords[static_cast<std::size_t>(j)] /= maxima[static_cast<std::size_t>(j)];
  return out;
}

// k-th largest score over the dataset and the id achieving it; score ties
// break toward the lower point id.
inline std::pair<double, int> kth_best_score(const Dataset& ds, const UtilityVector& w, int k) {
  if (k < 1 || k > ds.size())
    throw std::invalid_argument("kth_best_score: k out of range");
  std::vector<std::pair<double, int>> scored;
  scored.reserve(ds.points.size());
  for (const Point& p : ds.points) scored.emplace_back(score(p, w), p.id);
  auto cmp = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  std::nth_element(scored.begin(), scored.begin() + (k - 1), scored.end(), cmp);
  const auto& kth = scored[static_cast<std::size_t>(k - 1)];
  return {kth.first, kth.second};
}

namespace detail {

// 2D maxima by plane sweep; output sorted by increasing x (ids keep
// provenance). Exact duplicates keep the lowest id.
inline std::vector<Point> skyline_2d(const Dataset& ds) {
  std::vector<int> order(static_cast<std::size_t>(ds.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Point& pa = ds[a];
    const Point& pb = ds[b];
    if (pa[0] != pb[0]) return pa[0] > pb[0];
    if (pa[1] != pb[1]) return pa[1] > pb[1];
    return pa.id < pb.id;
  });
  std::vector<Point> out;
  double best_y = -1.0;
  for (int i : order) {
    if (ds[i][1] > best_y) {
      out.push_back(ds[i]);
      best_y = ds[i][1];
    }
  }
  std::reverse(out.begin(), out.end());  // increasing x
  return out;
}

}  // namespace detail

// Ids of all points not dominated by any other point; among exact duplicates
// only the lowest id survives. Result ids are ascending.
inline Selection skyline(const Dataset& ds) {
  ds.validate();
  std::vector<int> ids;
  if (ds.dim == 2) {
    auto pts = detail::skyline_2d(ds);
    ids.reserve(pts.size());
    for (const Point& p : pts) ids.push_back(p.id);
  } else {
    std::vector<int> order(static_cast<std::size_t>(ds.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double sa = ds[a].coord_sum(), sb = ds[b].coord_sum();
      if (sa != sb) return sa > sb;
      return ds[a].id < ds[b].id;
    });
    std::vector<int> accepted;
    for (int i : order) {
      const Point& q = ds[i];
      bool dead = false;
      for (int a : accepted) {
        const Point& p = ds[a];
        if (dominates(p, q) || p.coords == q.coords) { dead = true; break; }
      }
      if (!dead) accepted.push_back(i);
    }
    ids.reserve(accepted.size());
    for (int i : accepted) ids.push_back(ds[i].id);
  }
  std::sort(ids.begin(), ids.end());
  return Selection(std::move(ids));
}

namespace detail {

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace detail

// Upper-right convex hull chain: the points optimal for at least one
// nonnegative linear utility, sorted by increasing x (hence increasing dual
// slope). Dominated and collinear points are dropped, so the chain is
// strictly monotone in both coordinates.
inline std::vector<Point> convex_hull_2d(const Dataset& ds) {
  if (ds.dim != 2) throw std::invalid_argument("convex_hull_2d: dataset must be 2-dimensional");
  std::vector<Point> pts = detail::skyline_2d(ds);  // increasing x, decreasing y
  std::vector<Point> hull;
  hull.reserve(pts.size());
  for (const Point& p : pts) {
    while (hull.size() >= 2 &&
           detail::cross(hull[hull.size() - 2], hull[hull.size() - 1], p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

}  // namespace rmskit
