#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/rational.hpp"

namespace domelim {

enum class Comparator { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Comparator comparator = Comparator::LessEqual;
  Rational rhs = 0;
};

// maximize objective·x subject to the constraints. Variables flagged
// nonnegative get x ≥ 0; the rest are free.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<bool> nonnegative;

  std::size_t num_variables() const { return objective.size(); }
};

struct Optimal {
  Rational value;
  std::vector<Rational> solution;
};
struct Infeasible {};
struct Unbounded {};

using LpOutcome = std::variant<Optimal, Infeasible, Unbounded>;

// True iff x satisfies every constraint and sign condition exactly.
inline bool satisfies(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.nonnegative[j] && x[j] < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
    switch (c.comparator) {
      case Comparator::LessEqual:
        if (!(lhs <= c.rhs)) return false;
        break;
      case Comparator::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Comparator::GreaterEqual:
        if (!(lhs >= c.rhs)) return false;
        break;
    }
  }
  return true;
}

namespace detail {

// Dense simplex tableau over rationals. Row r holds B⁻¹A and, in its last
// entry, the value of basic variable basis[r].
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : a_(rows, std::vector<Rational>(cols + 1, Rational(0))), basis_(rows, 0), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r][cols_]; }
  const Rational& rhs(std::size_t r) const { return a_[r][cols_]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational inv = 1 / a_[pr][pc];
    for (auto& v : a_[pr]) v *= inv;
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (r == pr || a_[r][pc] == 0) continue;
      const Rational factor = a_[r][pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (a_[pr][c] != 0) a_[r][c] -= factor * a_[pr][c];
      }
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Maximizes cost·x over columns with allowed[c]; Bland's rule for both
  // the entering column and the leaving row. Returns false if unbounded.
  bool maximize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::vector<bool> in_basis(cols_, false);
      for (std::size_t b : basis_) in_basis[b] = true;

      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_ && entering == cols_; ++c) {
        if (!allowed[c] || in_basis[c]) continue;
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < a_.size(); ++r) {
          if (a_[r][c] != 0) reduced -= cost[basis_[r]] * a_[r][c];
        }
        if (reduced > 0) entering = c;
      }
      if (entering == cols_) return true;

      std::size_t leaving = a_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < a_.size(); ++r) {
        if (a_[r][entering] <= 0) continue;
        Rational ratio = a_[r][cols_] / a_[r][entering];
        if (leaving == a_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == a_.size()) return false;
      pivot(leaving, entering);
    }
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

// Exact two-phase simplex with Bland's anti-cycling rule.
inline LpOutcome solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  if (lp.nonnegative.size() != n) throw StructuralError("nonnegativity flags do not match variable count");
  for (const auto& c : lp.constraints) {
    if (c.coefficients.size() != n) throw StructuralError("constraint row length does not match variable count");
  }

  // Column layout: structural columns (free variables split into a
  // positive and a negative part), then slack/surplus, then artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (!lp.nonnegative[j]) neg_col[j] = cols++;
  }
  const std::size_t structural = cols;

  const std::size_t m = lp.constraints.size();
  std::vector<int> sign(m, 1);
  std::vector<Comparator> cmp(m);
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (std::size_t r = 0; r < m; ++r) {
    cmp[r] = lp.constraints[r].comparator;
    if (lp.constraints[r].rhs < 0) {
      sign[r] = -1;
      if (cmp[r] == Comparator::LessEqual) {
        cmp[r] = Comparator::GreaterEqual;
      } else if (cmp[r] == Comparator::GreaterEqual) {
        cmp[r] = Comparator::LessEqual;
      }
    }
    if (cmp[r] != Comparator::Equal) ++slack_count;
    if (cmp[r] != Comparator::LessEqual) ++artificial_count;
  }
  const std::size_t slack_begin = structural;
  const std::size_t artificial_begin = slack_begin + slack_count;
  cols = artificial_begin + artificial_count;

  detail::Tableau tab(m, cols);
  std::size_t next_slack = slack_begin;
  std::size_t next_artificial = artificial_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = sign[r] * c.coefficients[j];
      tab.at(r, pos_col[j]) = v;
      if (neg_col[j] != SIZE_MAX) tab.at(r, neg_col[j]) = -v;
    }
    tab.rhs(r) = sign[r] * c.rhs;
    if (cmp[r] == Comparator::LessEqual) {
      tab.at(r, next_slack) = 1;
      tab.basis()[r] = next_slack++;
    } else {
      if (cmp[r] == Comparator::GreaterEqual) tab.at(r, next_slack++) = -1;
      tab.at(r, next_artificial) = 1;
      tab.basis()[r] = next_artificial++;
    }
  }

  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t c = artificial_begin; c < cols; ++c) phase1[c] = -1;
    tab.maximize(phase1, std::vector<bool>(cols, true));
    Rational infeasibility = 0;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      if (tab.basis()[r] >= artificial_begin) infeasibility += tab.rhs(r);
    }
    if (infeasibility > 0) return Infeasible{};

    // Pivot zero-valued artificials out of the basis; rows where that is
    // impossible are linearly dependent and can go.
    for (std::size_t r = tab.rows(); r-- > 0;) {
      if (tab.basis()[r] < artificial_begin) continue;
      std::size_t col = artificial_begin;
      for (std::size_t c = 0; c < artificial_begin; ++c) {
        if (tab.at(r, c) != 0) {
          col = c;
          break;
        }
      }
      if (col == artificial_begin) {
        tab.drop_row(r);
      } else {
        tab.pivot(r, col);
      }
    }
  }

  std::vector<Rational> cost(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -lp.objective[j];
  }
  std::vector<bool> allowed(cols, true);
  for (std::size_t c = artificial_begin; c < cols; ++c) allowed[c] = false;
  if (!tab.maximize(cost, allowed)) return Unbounded{};

  std::vector<Rational> column_value(cols, Rational(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) column_value[tab.basis()[r]] = tab.rhs(r);
  Optimal result;
  result.solution.resize(n);
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    result.solution[j] = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) result.solution[j] -= column_value[neg_col[j]];
    result.value += lp.objective[j] * result.solution[j];
  }
  return result;
}

}  // namespace domelim
