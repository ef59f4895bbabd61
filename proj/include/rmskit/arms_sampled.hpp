#pragma once

// Greedy maximization of the sampled average happiness ratio. Submodularity
// and monotonicity of the objective give the usual (1 - 1/e) guarantee; the
// loop structure keeps per-function bests H_i and per-point marginal gains
// Delta_j, recomputing every gain each round, for O(d r N n) total work.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/rng.hpp"

namespace rmskit {

// N utility vectors drawn uniformly from the standard simplex (exponential
// spacings, L1-normalized), each with probability 1/N. Reproducible from the
// seed via the portable generator.
inline FunctionSample sample_linear_utilities(int N, int d, std::uint64_t seed) {
  if (N < 1 || d < 1) throw std::invalid_argument("sample_linear_utilities: bad arguments");
  PortableRng root(seed);
  std::vector<UtilityVector> ws;
  ws.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    PortableRng rng = root.split(static_cast<std::uint64_t>(i));
    std::vector<double> w(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      double u = rng.next_double();
      w[static_cast<std::size_t>(j)] = -std::log1p(-u);
    }
    ws.push_back(UtilityVector::simplex(std::move(w)));
  }
  return FunctionSample::uniform_linear(ws);
}

struct AhrGreedyResult {
  Selection sel;                    // in pick order
  double ahr = 0.0;
  std::vector<double> delta_trace;  // marginal gain of each pick
};

namespace detail {

// Fast path: every sampled function is linear. Points and weights are
// flattened so the inner loops stream contiguously.
inline AhrGreedyResult greedy_ahr_linear(const Dataset& ds, int r, const FunctionSample& fs) {
  const int n = ds.size(), d = ds.dim, N = fs.size();
  std::vector<double> pts(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) pts[static_cast<std::size_t>(i) * d + j] = ds[i][j];
  std::vector<double> wts(static_cast<std::size_t>(N) * d), probs(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const auto& e = fs.entries[static_cast<std::size_t>(i)];
    if (static_cast<int>(e.weights.size()) != d)
      throw std::invalid_argument("greedy_ahr: function dimension mismatch");
    for (int j = 0; j < d; ++j) wts[static_cast<std::size_t>(i) * d + j] = e.weights[static_cast<std::size_t>(j)];
    probs[static_cast<std::size_t>(i)] = e.prob;
  }

  // per-function dataset maxima, so happ(p, S_i) is one dot product
  std::vector<double> hmax(static_cast<std::size_t>(N), 0.0);
  for (int i = 0; i < N; ++i) {
    const double* w = &wts[static_cast<std::size_t>(i) * d];
    double m = 0.0;
    for (int p = 0; p < n; ++p) {
      const double* x = &pts[static_cast<std::size_t>(p) * d];
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += x[j] * w[j];
      if (s > m) m = s;
    }
    if (!(m > 0.0))
      throw std::invalid_argument("greedy_ahr: sampled function with nonpositive dataset maximum");
    hmax[static_cast<std::size_t>(i)] = m;
  }

  std::vector<double> best(static_cast<std::size_t>(N), 0.0);  // H_i
  std::vector<double> delta(static_cast<std::size_t>(n), 0.0);
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);

  auto recompute_gains = [&]() {
    for (int p = 0; p < n; ++p) {
      const double* x = &pts[static_cast<std::size_t>(p) * d];
      double acc = 0.0;
      for (int i = 0; i < N; ++i) {
        const double* w = &wts[static_cast<std::size_t>(i) * d];
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += x[j] * w[j];
        double gain = s / hmax[static_cast<std::size_t>(i)] - best[static_cast<std::size_t>(i)];
        if (gain > 0.0) acc += probs[static_cast<std::size_t>(i)] * gain;
      }
      delta[static_cast<std::size_t>(p)] = acc;
    }
  };

  AhrGreedyResult out;
  std::vector<int> picks;
  int rounds = std::min(r, n);
  recompute_gains();
  for (int s = 0; s < rounds; ++s) {
    int x = -1;
    double dx = -1.0;
    for (int p = 0; p < n; ++p)
      if (!chosen[static_cast<std::size_t>(p)] && delta[static_cast<std::size_t>(p)] > dx) {
        dx = delta[static_cast<std::size_t>(p)];
        x = p;
      }
    chosen[static_cast<std::size_t>(x)] = 1;
    picks.push_back(ds[x].id);
    out.delta_trace.push_back(dx);
    const double* px = &pts[static_cast<std::size_t>(x) * d];
    for (int i = 0; i < N; ++i) {
      const double* w = &wts[static_cast<std::size_t>(i) * d];
      double sc = 0.0;
      for (int j = 0; j < d; ++j) sc += px[j] * w[j];
      double h = sc / hmax[static_cast<std::size_t>(i)];
      if (h > best[static_cast<std::size_t>(i)]) best[static_cast<std::size_t>(i)] = h;
    }
    if (s + 1 < rounds) recompute_gains();
  }

  double ahr = 0.0;
  for (int i = 0; i < N; ++i) ahr += probs[static_cast<std::size_t>(i)] * best[static_cast<std::size_t>(i)];
  out.ahr = ahr;
  out.sel = Selection(std::move(picks));
  return out;
}

// Generic path for opaque function handles; same control flow.
inline AhrGreedyResult greedy_ahr_generic(const Dataset& ds, int r, const FunctionSample& fs) {
  const int n = ds.size(), N = fs.size();
  std::vector<double> hmax(static_cast<std::size_t>(N), 0.0);
  for (int i = 0; i < N; ++i) {
    double m = 0.0;
    for (const Point& p : ds.points) m = std::max(m, fs.entries[static_cast<std::size_t>(i)](p));
    if (!(m > 0.0))
      throw std::invalid_argument("greedy_ahr: sampled function with nonpositive dataset maximum");
    hmax[static_cast<std::size_t>(i)] = m;
  }
  std::vector<double> best(static_cast<std::size_t>(N), 0.0);
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);

  auto gain_of = [&](int p) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      double h = fs.entries[static_cast<std::size_t>(i)](ds[p]) / hmax[static_cast<std::size_t>(i)];
      double g = h - best[static_cast<std::size_t>(i)];
      if (g > 0.0) acc += fs.entries[static_cast<std::size_t>(i)].prob * g;
    }
    return acc;
  };

  AhrGreedyResult out;
  std::vector<int> picks;
  int rounds = std::min(r, n);
  for (int s = 0; s < rounds; ++s) {
    int x = -1;
    double dx = -1.0;
    for (int p = 0; p < n; ++p) {
      if (chosen[static_cast<std::size_t>(p)]) continue;
      double g = gain_of(p);
      if (g > dx) { dx = g; x = p; }
    }
    chosen[static_cast<std::size_t>(x)] = 1;
    picks.push_back(ds[x].id);
    out.delta_trace.push_back(dx);
    for (int i = 0; i < N; ++i) {
      double h = fs.entries[static_cast<std::size_t>(i)](ds[x]) / hmax[static_cast<std::size_t>(i)];
      if (h > best[static_cast<std::size_t>(i)]) best[static_cast<std::size_t>(i)] = h;
    }
  }
  double ahr = 0.0;
  for (int i = 0; i < N; ++i) ahr += fs.entries[static_cast<std::size_t>(i)].prob * best[static_cast<std::size_t>(i)];
  out.ahr = ahr;
  out.sel = Selection(std::move(picks));
  return out;
}

}  // namespace detail

// Greedy ARMS over a sampled function set. Picks exactly min(r, n) points,
// each round the one with the largest probability-weighted marginal gain
// (ties toward the lower point id).
inline AhrGreedyResult greedy_ahr(const Dataset& ds, int r, const FunctionSample& fs) {
  if (r < 1) throw std::invalid_argument("greedy_ahr: r must be >= 1");
  ds.validate();
  fs.validate();
  return fs.all_linear() ? detail::greedy_ahr_linear(ds, r, fs)
                         : detail::greedy_ahr_generic(ds, r, fs);
}

}  // namespace rmskit
