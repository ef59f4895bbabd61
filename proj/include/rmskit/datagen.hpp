#pragma once

// Synthetic dataset generation in the style of the classic skyline-operator
// benchmark generator: independent uniform coordinates, correlated /
// anticorrelated perturbations around the diagonal, and first-quadrant
// unit-circle samples (every point on the convex hull). Reproducible from
// the seed via the counter-based generator; chunking cannot change output.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/rng.hpp"

namespace rmskit {

enum class GenKind { Independent, Correlated, Anticorrelated, Circle2d };

struct GenSpec {
  GenKind kind = GenKind::Independent;
  int n = 1;
  int d = 2;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1 || d < 1) throw std::invalid_argument("genspec: n and d must be >= 1");
    if (kind == GenKind::Circle2d && d != 2)
      throw std::invalid_argument("genspec: circle2d requires d == 2");
  }
};

inline const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::Independent: return "independent";
    case GenKind::Correlated: return "correlated";
    case GenKind::Anticorrelated: return "anticorrelated";
    case GenKind::Circle2d: return "circle2d";
  }
  return "?";
}

inline GenKind gen_kind_from(const std::string& s) {
  if (s == "independent") return GenKind::Independent;
  if (s == "correlated") return GenKind::Correlated;
  if (s == "anticorrelated") return GenKind::Anticorrelated;
  if (s == "circle2d") return GenKind::Circle2d;
  throw std::invalid_argument("genspec: unknown kind '" + s + "'");
}

namespace detail {

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace detail

inline Dataset generate(const GenSpec& spec) {
  spec.validate();
  PortableRng root(spec.seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    PortableRng rng = root.split(static_cast<std::uint64_t>(i));
    std::vector<double> row(static_cast<std::size_t>(spec.d));
    switch (spec.kind) {
      case GenKind::Independent:
        for (int j = 0; j < spec.d; ++j) row[static_cast<std::size_t>(j)] = rng.next_double();
        break;
      case GenKind::Correlated: {
        double base = rng.next_double();
        for (int j = 0; j < spec.d; ++j)
          row[static_cast<std::size_t>(j)] = detail::clamp01(base + 0.15 * rng.next_gaussian());
        break;
      }
      case GenKind::Anticorrelated: {
        std::vector<double> raw(static_cast<std::size_t>(spec.d));
        double mean = 0.0;
        for (int j = 0; j < spec.d; ++j) {
          raw[static_cast<std::size_t>(j)] = rng.next_double();
          mean += raw[static_cast<std::size_t>(j)];
        }
        mean /= spec.d;
        for (int j = 0; j < spec.d; ++j)
          row[static_cast<std::size_t>(j)] = detail::clamp01(
              0.5 + (raw[static_cast<std::size_t>(j)] - mean) + 0.08 * rng.next_gaussian());
        break;
      }
      case GenKind::Circle2d: {
        double theta = rng.next_double() * std::numbers::pi / 2.0;
        row[0] = std::cos(theta);
        row[1] = std::sin(theta);
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return Dataset::from_rows(rows);
}

}  // namespace rmskit
