#pragma once

// Self-contained dense two-phase simplex for the tiny LPs this library
// generates (a handful of variables, tens of constraints). Solves
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Classic tableau formulation with Bland-style tie breaking on labels.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rmskit {

class DenseSimplex {
 public:
  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
  };

  DenseSimplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
               const std::vector<double>& c, double eps = 1e-9)
      : eps_(eps),
        m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basic_(static_cast<std::size_t>(m_)),
        nonbasic_(static_cast<std::size_t>(n_) + 1),
        tab_(static_cast<std::size_t>(m_ + 2),
             std::vector<double>(static_cast<std::size_t>(n_ + 2), 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[ui(i)][ui(j)] = A[ui(i)][ui(j)];
      basic_[ui(i)] = n_ + i;
      tab_[ui(i)][ui(n_)] = -1.0;
      tab_[ui(i)][ui(n_ + 1)] = b[ui(i)];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[ui(j)] = j;
      tab_[ui(m_)][ui(j)] = -c[ui(j)];
    }
    nonbasic_[ui(n_)] = -1;
    tab_[ui(m_ + 1)][ui(n_)] = 1.0;
  }

  Result solve() {
    Result res;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (tab_[ui(i)][ui(n_ + 1)] < tab_[ui(r)][ui(n_ + 1)]) r = i;
    if (tab_[ui(r)][ui(n_ + 1)] < -eps_) {
      pivot(r, n_);
      if (!run_phase(2) || tab_[ui(m_ + 1)][ui(n_ + 1)] < -eps_) {
        res.status = Status::Infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[ui(i)] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j)
            if (std::pair(tab_[ui(i)][ui(j)], nonbasic_[ui(j)]) <
                std::pair(tab_[ui(i)][ui(s)], nonbasic_[ui(s)]))
              s = j;
          pivot(i, s);
        }
      }
    }
    bool bounded = run_phase(1);
    res.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[ui(i)] >= 0 && basic_[ui(i)] < n_)
        res.x[ui(basic_[ui(i)])] = tab_[ui(i)][ui(n_ + 1)];
    res.objective = tab_[ui(m_)][ui(n_ + 1)];
    res.status = bounded ? Status::Optimal : Status::Unbounded;
    return res;
  }

  // Convenience wrapper.
  static Result maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                         const std::vector<double>& c, double eps = 1e-9) {
    return DenseSimplex(A, b, c, eps).solve();
  }

 private:
  static std::size_t ui(int i) { return static_cast<std::size_t>(i); }

  void pivot(int r, int s) {
    auto& row = tab_[ui(r)];
    double inv = 1.0 / row[ui(s)];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(tab_[ui(i)][ui(s)]) <= eps_) continue;
      auto& other = tab_[ui(i)];
      double factor = other[ui(s)] * inv;
      for (int j = 0; j < n_ + 2; ++j) other[ui(j)] -= row[ui(j)] * factor;
      other[ui(s)] = row[ui(s)] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) row[ui(j)] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) tab_[ui(i)][ui(s)] *= -inv;
    row[ui(s)] = inv;
    std::swap(basic_[ui(r)], nonbasic_[ui(s)]);
  }

  bool run_phase(int phase) {
    int obj_row = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[ui(j)] == -phase) continue;  // artificial stays out in phase 1
        if (s == -1 || std::pair(tab_[ui(obj_row)][ui(j)], nonbasic_[ui(j)]) <
                           std::pair(tab_[ui(obj_row)][ui(s)], nonbasic_[ui(s)]))
          s = j;
      }
      if (tab_[ui(obj_row)][ui(s)] >= -eps_) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (tab_[ui(i)][ui(s)] <= eps_) continue;
        if (r == -1 ||
            std::pair(tab_[ui(i)][ui(n_ + 1)] / tab_[ui(i)][ui(s)], basic_[ui(i)]) <
                std::pair(tab_[ui(r)][ui(n_ + 1)] / tab_[ui(r)][ui(s)], basic_[ui(r)]))
          r = i;
      }
      if (r == -1) return false;  // unbounded in this direction
      pivot(r, s);
    }
  }

  double eps_;
  int m_, n_;
  std::vector<int> basic_, nonbasic_;
  std::vector<std::vector<double>> tab_;
};

}  // namespace rmskit
