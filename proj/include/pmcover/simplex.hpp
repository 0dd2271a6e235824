#pragma once

#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "pmcover/error.hpp"
#include "pmcover/rational.hpp"

namespace pmc {

// Dense two-phase tableau simplex, minimization, all variables >= 0.
// Instantiated with Rational (exact pivoting, zero tolerances) or double
// (tolerance-guarded, Bland's rule engaged on degenerate streaks).

enum class Sense { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

template <typename T>
struct LpConstraint {
  std::vector<T> a;
  Sense sense = Sense::Le;
  T b{};
};

template <typename T>
struct LpProblem {
  int nvars = 0;
  std::vector<T> objective;  // minimized
  std::vector<LpConstraint<T>> rows;

  LpConstraint<T>& add_row(Sense sense, T b) {
    rows.push_back(LpConstraint<T>{std::vector<T>(nvars, T{}), sense, std::move(b)});
    return rows.back();
  }
};

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  T value{};
  std::vector<T> x;
  long pivots = 0;
};

namespace detail {

template <typename T>
struct SimplexTol {
  static T pivot() { return T{}; }
  static T feas() { return T{}; }
};

template <>
struct SimplexTol<double> {
  static double pivot() { return 1e-9; }
  static double feas() { return 1e-7; }
};

}  // namespace detail

template <typename T>
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem<T>& p, long max_pivots = 500000)
      : max_pivots_(max_pivots) {
    build(p);
  }

  LpSolution<T> solve(const LpProblem<T>& p) {
    LpSolution<T> out;
    // Phase 1: minimize the artificial sum (cost row kArt).
    if (!run(kArt)) {
      out.status = LpStatus::IterLimit;
      return out;
    }
    if (phase1_value() > detail::SimplexTol<T>::feas()) {
      out.status = LpStatus::Infeasible;
      out.pivots = pivots_;
      return out;
    }
    evict_artificials();
    phase2_ = true;
    if (!run(kObj)) {
      out.status = unbounded_ ? LpStatus::Unbounded : LpStatus::IterLimit;
      out.pivots = pivots_;
      return out;
    }
    if (unbounded_) {
      out.status = LpStatus::Unbounded;
      out.pivots = pivots_;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x.assign(p.nvars, T{});
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < p.nvars) out.x[basis_[i]] = tab_[i][rhs_];
    out.value = T{};
    for (int j = 0; j < p.nvars; ++j) out.value += p.objective[j] * out.x[j];
    out.pivots = pivots_;
    return out;
  }

 private:
  static constexpr int kObj = 0;
  static constexpr int kArt = 1;

  void build(const LpProblem<T>& p) {
    m_ = static_cast<int>(p.rows.size());
    nstruct_ = p.nvars;
    int nslack = 0, nart = 0;
    for (const auto& r : p.rows) {
      bool flip = r.b < T{};
      Sense s = r.sense;
      if (flip && s != Sense::Eq) s = (s == Sense::Le) ? Sense::Ge : Sense::Le;
      if (s != Sense::Eq) ++nslack;
      if (s != Sense::Le) ++nart;
    }
    ncols_ = nstruct_ + nslack + nart;
    rhs_ = ncols_;
    art_begin_ = nstruct_ + nslack;
    tab_.assign(m_, std::vector<T>(ncols_ + 1, T{}));
    basis_.assign(m_, -1);
    cost_.assign(2, std::vector<T>(ncols_ + 1, T{}));
    for (int j = 0; j < nstruct_; ++j) cost_[kObj][j] = p.objective[j];

    int slack_at = nstruct_, art_at = art_begin_;
    for (int i = 0; i < m_; ++i) {
      const auto& r = p.rows[i];
      bool flip = r.b < T{};
      Sense s = r.sense;
      if (flip && s != Sense::Eq) s = (s == Sense::Le) ? Sense::Ge : Sense::Le;
      for (int j = 0; j < nstruct_; ++j) tab_[i][j] = flip ? -r.a[j] : r.a[j];
      tab_[i][rhs_] = flip ? -r.b : r.b;
      if (s == Sense::Le) {
        tab_[i][slack_at] = T(1);
        basis_[i] = slack_at++;
      } else if (s == Sense::Ge) {
        tab_[i][slack_at] = T(-1);
        ++slack_at;
        tab_[i][art_at] = T(1);
        basis_[i] = art_at++;
      } else {
        tab_[i][art_at] = T(1);
        basis_[i] = art_at++;
      }
    }
    // Zero out reduced costs of the basic artificials in the phase-1 row.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= art_begin_) {
        for (int j = 0; j <= ncols_; ++j) cost_[kArt][j] -= tab_[i][j];
      }
    }
  }

  T phase1_value() const { return -cost_[kArt][rhs_]; }

  // Artificials exist only to seed the basis; once nonbasic they are dead
  // columns, so they are never eligible to enter.
  bool col_allowed(int j) const { return j < art_begin_; }

  // Dantzig's rule with a permanent switch to Bland's once the objective
  // stalls, which guards against cycling in both arithmetic modes.
  int pick_entering(int crow) const {
    const T eps = detail::SimplexTol<T>::pivot();
    if (bland_) {
      for (int j = 0; j < ncols_; ++j)
        if (col_allowed(j) && cost_[crow][j] < -eps) return j;
      return -1;
    }
    int best = -1;
    T best_val{};
    for (int j = 0; j < ncols_; ++j) {
      if (!col_allowed(j)) continue;
      if (cost_[crow][j] < -eps && (best == -1 || cost_[crow][j] < best_val)) {
        best = j;
        best_val = cost_[crow][j];
      }
    }
    return best;
  }

  int pick_leaving(int enter) const {
    const T eps = detail::SimplexTol<T>::pivot();
    int row = -1;
    T best_ratio{};
    for (int i = 0; i < m_; ++i) {
      if (tab_[i][enter] <= eps) continue;
      T ratio = tab_[i][rhs_] / tab_[i][enter];
      if (row == -1 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[row])) {
        row = i;
        best_ratio = ratio;
      }
    }
    return row;
  }

  void pivot(int row, int col) {
    T inv = T(1) / tab_[row][col];
    for (int j = 0; j <= ncols_; ++j) tab_[row][j] *= inv;
    tab_[row][col] = T(1);
    auto eliminate = [&](std::vector<T>& r) {
      T factor = r[col];
      if (factor == T{}) return;
      for (int j = 0; j <= ncols_; ++j) r[j] -= factor * tab_[row][j];
      r[col] = T{};
    };
    for (int i = 0; i < m_; ++i)
      if (i != row) eliminate(tab_[i]);
    eliminate(cost_[kObj]);
    eliminate(cost_[kArt]);
    basis_[row] = col;
    ++pivots_;
  }

  // The cost-row RHS carries the negated objective, so it is nondecreasing
  // under minimization pivots.
  static bool improved(const T& now, const T& before) {
    if constexpr (std::is_same_v<T, double>) {
      return now > before + 1e-13 * (1.0 + (before < 0 ? -before : before));
    } else {
      return now > before;
    }
  }

  bool run(int crow) {
    long stall = 0;
    T last = cost_[crow][rhs_];
    const long stall_limit = 2L * (m_ + ncols_) + 16;
    while (true) {
      if (pivots_ >= max_pivots_) return false;
      int enter = pick_entering(crow);
      if (enter < 0) return true;
      int leave = pick_leaving(enter);
      if (leave < 0) {
        unbounded_ = true;
        return true;
      }
      pivot(leave, enter);
      if (improved(cost_[crow][rhs_], last)) {
        stall = 0;
        last = cost_[crow][rhs_];
      } else if (++stall > stall_limit) {
        bland_ = true;
      }
    }
  }

  // After phase 1, pivot artificials out of the basis where possible;
  // rows with no eligible column are redundant and stay inert at zero.
  void evict_artificials() {
    const T eps = detail::SimplexTol<T>::pivot();
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      int col = -1;
      for (int j = 0; j < art_begin_; ++j) {
        if (tab_[i][j] > eps || tab_[i][j] < -eps) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
    }
  }

  int m_ = 0, nstruct_ = 0, ncols_ = 0, rhs_ = 0, art_begin_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<std::vector<T>> cost_;
  std::vector<int> basis_;
  long pivots_ = 0;
  long max_pivots_;
  bool phase2_ = false;
  bool bland_ = false;
  bool unbounded_ = false;
};

template <typename T>
LpSolution<T> solve_lp(const LpProblem<T>& p, long max_pivots = 500000) {
  SimplexSolver<T> solver(p, max_pivots);
  return solver.solve(p);
}

}  // namespace pmc
