#pragma once

// Shared test fixtures: the four-hotel dataset (ids A=0, B=1, C=2, D=3) and
// the three weighted utility functions used alongside it.

#include <vector>

#include "rmskit/core.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/rng.hpp"

namespace fixtures {

inline rmskit::Dataset hotels() {
  return rmskit::Dataset::from_rows({{0.8, 0.35},    // A
                                     {0.6, 0.6},     // B
                                     {0.35, 0.8},    // C
                                     {0.5, 0.3}});   // D
}

constexpr int kHotelA = 0, kHotelB = 1, kHotelC = 2, kHotelD = 3;

inline rmskit::FunctionSample weighted_utilities() {
  return rmskit::FunctionSample::weighted_linear(
      {rmskit::UtilityVector::raw({0.0, 1.0}), rmskit::UtilityVector::raw({1.0, 0.0}),
       rmskit::UtilityVector::raw({0.5, 0.5})},
      {0.6, 0.2, 0.2});
}

inline rmskit::Dataset random_dataset(rmskit::PortableRng& rng, int n, int d) {
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(j)] = rng.next_double();
    rows.push_back(std::move(row));
  }
  return rmskit::Dataset::from_rows(rows);
}

}  // namespace fixtures
