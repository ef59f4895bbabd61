#pragma once

// SMAWK column maxima for totally monotone matrices, oriented the way the
// happiness DP consumes it: per column, the row of the maximum entry, taking
// the last (largest) row on ties, with argmax rows non-decreasing across
// columns. Entries are pulled from an on-demand oracle and never
// materialized.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rmskit {

struct MatrixOracle {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<double(std::size_t, std::size_t)> entry;
};

namespace detail {

inline void smawk_rec(const std::function<double(std::size_t, std::size_t)>& entry,
                      const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols,
                      std::vector<std::size_t>& best) {
  if (cols.empty()) return;

  // Reduce: keep at most |cols| rows that can still hold a column maximum.
  // A surviving row at stack position t is only viable for cols[t..]; a new
  // row that ties-or-beats the top at its critical column supersedes it
  // everywhere (ties go to the later row).
  std::vector<std::size_t> surv;
  surv.reserve(std::min(rows.size(), cols.size()));
  for (std::size_t r : rows) {
    while (!surv.empty()) {
      std::size_t c = cols[surv.size() - 1];
      if (entry(r, c) >= entry(surv.back(), c))
        surv.pop_back();
      else
        break;
    }
    if (surv.size() < cols.size()) surv.push_back(r);
  }

  std::vector<std::size_t> odd;
  odd.reserve(cols.size() / 2);
  for (std::size_t i = 1; i < cols.size(); i += 2) odd.push_back(cols[i]);
  smawk_rec(entry, surv, odd, best);

  // Fill even-position columns, scanning only between the answers of the
  // neighboring odd columns.
  std::size_t lo = 0;
  for (std::size_t i = 0; i < cols.size(); i += 2) {
    std::size_t c = cols[i];
    std::size_t hi = surv.size() - 1;
    if (i + 1 < cols.size()) {
      std::size_t next_row = best[cols[i + 1]];
      hi = static_cast<std::size_t>(
          std::lower_bound(surv.begin(), surv.end(), next_row) - surv.begin());
    }
    std::size_t arg = surv[lo];
    double val = entry(surv[lo], c);
    for (std::size_t t = lo + 1; t <= hi; ++t) {
      double v = entry(surv[t], c);
      if (v >= val) {
        val = v;
        arg = surv[t];
      }
    }
    best[c] = arg;
    lo = hi;
  }
}

}  // namespace detail

// Row index of the maximum in every column. The caller guarantees total
// monotonicity; the output argmax sequence is then non-decreasing.
inline std::vector<std::size_t> smawk_column_maxima(const MatrixOracle& m) {
  if (m.rows == 0 || m.cols == 0)
    throw std::invalid_argument("smawk: matrix must have rows and columns");
  std::vector<std::size_t> rows(m.rows), cols(m.cols);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  std::vector<std::size_t> best(m.cols, 0);
  detail::smawk_rec(m.entry, rows, cols, best);
  return best;
}

// Quadrangle inequality H[i][l] + H[j][k] <= H[i][k] + H[j][l] for i<j, k<l,
// checked on adjacent 2x2 minors (equivalent to all quadruples).
inline bool check_inverse_monge(const MatrixOracle& m, double tol = 1e-9) {
  if (m.rows < 2 || m.cols < 2) return true;
  for (std::size_t i = 0; i + 1 < m.rows; ++i)
    for (std::size_t k = 0; k + 1 < m.cols; ++k)
      if (m.entry(i, k + 1) + m.entry(i + 1, k) >
          m.entry(i, k) + m.entry(i + 1, k + 1) + tol)
        return false;
  return true;
}

}  // namespace rmskit
