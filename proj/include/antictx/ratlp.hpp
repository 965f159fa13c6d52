#pragma once

// Exact rational linear programming: dense two-phase tableau simplex with
// Bland's rule, plus the state-polytope queries built on top of it.

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antictx/errors.hpp"
#include "antictx/rational.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

enum class Relation { less_equal, equal, greater_equal };

struct Row {
  std::vector<Rational> coefficients;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

/// maximize objective . x subject to rows and per-variable bounds.
/// A missing lower bound means the variable is free.
struct LinearProgram {
  std::vector<std::string> variable_names;
  std::vector<Rational> objective;
  std::vector<Row> rows;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  /// Variables with lower bound 0, no upper bound and a zero objective.
  static LinearProgram with_variables(std::vector<std::string> names) {
    LinearProgram lp;
    const auto n = names.size();
    lp.variable_names = std::move(names);
    lp.objective.assign(n, Rational(0));
    lp.lower.assign(n, Rational(0));
    lp.upper.assign(n, std::nullopt);
    return lp;
  }

  [[nodiscard]] std::size_t num_variables() const noexcept { return variable_names.size(); }

  void add_row(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    rows.push_back({std::move(coefficients), relation, std::move(rhs)});
  }
};

enum class LPStatus { optimal, infeasible, unbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  Rational value;
  std::vector<Rational> point;
};

/// Plain-text dump with "p/q" rationals, for debugging.
inline std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  auto term_list = [&](const std::vector<Rational>& c) {
    bool first = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      os << (first ? "" : " + ") << to_string(c[j]) << " " << lp.variable_names[j];
      first = false;
    }
    if (first) os << "0";
  };
  os << "maximize ";
  term_list(lp.objective);
  os << "\nsubject to\n";
  for (const auto& row : lp.rows) {
    os << "  ";
    term_list(row.coefficients);
    os << (row.relation == Relation::less_equal ? " <= " : row.relation == Relation::equal ? " = " : " >= ")
       << to_string(row.rhs) << "\n";
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    os << "  " << (lp.lower[j] ? to_string(*lp.lower[j]) : "-inf") << " <= " << lp.variable_names[j] << " <= "
       << (lp.upper[j] ? to_string(*lp.upper[j]) : "+inf") << "\n";
  }
  return os.str();
}

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows, std::vector<Rational>(cols + 1)), reduced_(cols + 1), basis_(rows), active_(cols, true) {}

  [[nodiscard]] std::size_t rows() const noexcept { return cells_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return active_.size(); }
  Rational& at(std::size_t i, std::size_t j) { return cells_[i][j]; }
  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return cells_[i][j]; }
  Rational& rhs(std::size_t i) { return cells_[i].back(); }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  [[nodiscard]] std::size_t basic(std::size_t i) const { return basis_[i]; }
  void deactivate(std::size_t j) { active_[j] = false; }

  // Reduced costs of `costs` (maximize) with respect to the current basis.
  void price(const std::vector<Rational>& costs) {
    for (std::size_t j = 0; j < cols(); ++j) reduced_[j] = costs[j];
    reduced_.back() = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j) reduced_[j] -= cb * cells_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = cells_[r][c];
    for (auto& v : cells_[r]) v /= p;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || cells_[i][c] == 0) continue;
      const Rational f = cells_[i][c];
      for (std::size_t j = 0; j <= cols(); ++j) {
        if (cells_[r][j] != 0) cells_[i][j] -= f * cells_[r][j];
      }
    }
    if (reduced_[c] != 0) {
      const Rational f = reduced_[c];
      for (std::size_t j = 0; j <= cols(); ++j) {
        if (cells_[r][j] != 0) reduced_[j] -= f * cells_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Bland's rule: lowest-index improving column; ratio ties go to the
  // lowest-index basic variable. Returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (active_[j] && reduced_[j] > 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        const Rational& a = cells_[i][*entering];
        if (a <= 0) continue;
        Rational ratio = cells_[i].back() / a;
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  // -(objective value) lives in the last slot.
  [[nodiscard]] Rational value() const { return -reduced_.back(); }

  void erase_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

inline bool satisfies(const Row& row, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coefficients[j] * x[j];
  switch (row.relation) {
    case Relation::less_equal: return lhs <= row.rhs;
    case Relation::equal: return lhs == row.rhs;
    case Relation::greater_equal: return lhs >= row.rhs;
  }
  return false;
}

}  // namespace detail

/// Solves the program exactly. Optimal points are re-checked against every
/// row and bound before they are returned.
inline LPResult solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  if (lp.objective.size() != n || lp.lower.size() != n || lp.upper.size() != n) {
    throw DimensionMismatchError("objective/bounds length differs from the number of variables");
  }
  for (const auto& row : lp.rows) {
    if (row.coefficients.size() != n) throw DimensionMismatchError("row length differs from the number of variables");
  }

  // Substitute x = l + y for bounded-below variables and x = y+ - y- for free
  // ones, so every structural column is nonnegative.
  struct Column {
    std::size_t var;
    int sign;
  };
  std::vector<Column> columns;
  for (std::size_t j = 0; j < n; ++j) {
    columns.push_back({j, +1});
    if (!lp.lower[j]) columns.push_back({j, -1});
  }
  std::vector<Rational> shift(n);
  for (std::size_t j = 0; j < n; ++j) shift[j] = lp.lower[j] ? *lp.lower[j] : Rational(0);

  std::vector<Row> rows;
  for (const auto& row : lp.rows) {
    Row r;
    r.relation = row.relation;
    r.rhs = row.rhs;
    r.coefficients.resize(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      r.coefficients[k] = columns[k].sign * row.coefficients[columns[k].var];
    }
    for (std::size_t j = 0; j < n; ++j) r.rhs -= row.coefficients[j] * shift[j];
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    Row r;
    r.relation = Relation::less_equal;
    r.rhs = *lp.upper[j] - shift[j];
    r.coefficients.assign(columns.size(), Rational(0));
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k].var == j) r.coefficients[k] = columns[k].sign;
    }
    rows.push_back(std::move(r));
  }
  for (auto& r : rows) {
    if (r.rhs < 0) {
      for (auto& c : r.coefficients) c = -c;
      r.rhs = -r.rhs;
      if (r.relation == Relation::less_equal) r.relation = Relation::greater_equal;
      else if (r.relation == Relation::greater_equal) r.relation = Relation::less_equal;
    }
  }

  const std::size_t m = rows.size();
  const std::size_t structural = columns.size();
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& r : rows) {
    if (r.relation != Relation::equal) ++slack_count;
    if (r.relation != Relation::less_equal) ++artificial_count;
  }
  const std::size_t first_artificial = structural + slack_count;
  const std::size_t total = first_artificial + artificial_count;

  detail::Tableau t(m, total);
  std::size_t next_slack = structural;
  std::size_t next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < structural; ++k) t.at(i, k) = rows[i].coefficients[k];
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].relation) {
      case Relation::less_equal:
        t.at(i, next_slack) = 1;
        t.basic(i) = next_slack++;
        break;
      case Relation::greater_equal:
        t.at(i, next_slack++) = -1;
        t.at(i, next_artificial) = 1;
        t.basic(i) = next_artificial++;
        break;
      case Relation::equal:
        t.at(i, next_artificial) = 1;
        t.basic(i) = next_artificial++;
        break;
    }
  }

  if (artificial_count > 0) {
    std::vector<Rational> phase1(total, Rational(0));
    for (std::size_t k = first_artificial; k < total; ++k) phase1[k] = -1;
    t.price(phase1);
    t.optimize();  // bounded below by 0
    if (t.value() < 0) return LPResult{LPStatus::infeasible, 0, {}};
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linear combinations of the others.
    for (std::size_t i = t.rows(); i-- > 0;) {
      if (t.basic(i) < first_artificial) continue;
      std::optional<std::size_t> col;
      for (std::size_t k = 0; k < first_artificial; ++k) {
        if (t.at(i, k) != 0) {
          col = k;
          break;
        }
      }
      if (col) t.pivot(i, *col);
      else t.erase_row(i);
    }
    for (std::size_t k = first_artificial; k < total; ++k) t.deactivate(k);
  }

  std::vector<Rational> phase2(total, Rational(0));
  for (std::size_t k = 0; k < structural; ++k) phase2[k] = columns[k].sign * lp.objective[columns[k].var];
  t.price(phase2);
  if (!t.optimize()) return LPResult{LPStatus::unbounded, 0, {}};

  std::vector<Rational> y(total, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i) y[t.basic(i)] = t.rhs(i);
  std::vector<Rational> x = shift;
  for (std::size_t k = 0; k < structural; ++k) x[columns[k].var] += columns[k].sign * y[k];

  for (const auto& row : lp.rows) {
    if (!detail::satisfies(row, x)) throw std::logic_error("simplex returned a point violating a row");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if ((lp.lower[j] && x[j] < *lp.lower[j]) || (lp.upper[j] && x[j] > *lp.upper[j])) {
      throw std::logic_error("simplex returned a point violating a bound");
    }
  }
  Rational value = 0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
  return LPResult{LPStatus::optimal, std::move(value), std::move(x)};
}

// ---------------------------------------------------------------------------
// State polytope queries

/// One variable per outcome in [0, 1]; an equality row per context and a
/// "<= 1" row per partial context.
inline LinearProgram build_state_polytope(const Scenario& s) {
  auto lp = LinearProgram::with_variables(s.outcomes());
  lp.upper.assign(s.size(), Rational(1));
  auto indicator = [&](const std::vector<std::size_t>& set) {
    std::vector<Rational> row(s.size(), Rational(0));
    for (auto i : set) row[i] = 1;
    return row;
  };
  for (const auto& ctx : s.context_indices()) lp.add_row(indicator(ctx), Relation::equal, 1);
  for (const auto& part : s.partial_indices()) lp.add_row(indicator(part), Relation::less_equal, 1);
  return lp;
}

/// Maximum of the functional over all states of the scenario.
inline LPResult state_optimize(const Scenario& s, const Coefficients& coeffs) {
  auto lp = build_state_polytope(s);
  lp.objective = s.dense(coeffs);
  return solve(lp);
}

enum class StateUniqueness { no_state, unique, non_unique };

struct UniquenessResult {
  StateUniqueness kind = StateUniqueness::no_state;
  std::vector<Rational> point;  // set when kind == unique
};

/// Maximizes and minimizes every coordinate over the state polytope.
inline UniquenessResult state_uniqueness(const Scenario& s) {
  auto lp = build_state_polytope(s);
  if (solve(lp).status == LPStatus::infeasible) return {StateUniqueness::no_state, {}};
  std::vector<Rational> point(s.size());
  bool unique = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    lp.objective.assign(s.size(), Rational(0));
    lp.objective[i] = 1;
    const auto hi = solve(lp);
    lp.objective[i] = -1;
    const auto lo = solve(lp);
    if (hi.value != -lo.value) unique = false;
    point[i] = hi.value;
  }
  if (!unique) return {StateUniqueness::non_unique, {}};
  return {StateUniqueness::unique, std::move(point)};
}

}  // namespace antictx
