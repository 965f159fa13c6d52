#pragma once

// Value functions: noncontextual 0/1 assignments with exactly one 1 per
// context and at most one per partial context.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antictx/errors.hpp"
#include "antictx/ratlp.hpp"
#include "antictx/rational.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

/// A 0/1 vector indexed by the canonical outcome order of its scenario.
class ValueFunction {
 public:
  ValueFunction() = default;
  explicit ValueFunction(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] != 0; }
  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  [[nodiscard]] bool at(const Scenario& s, std::string_view label) const { return (*this)[s.require_index(label)]; }

  /// Labels assigned the value 1.
  [[nodiscard]] std::vector<Label> ones(const Scenario& s) const {
    std::vector<Label> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(s.outcomes()[i]);
    }
    return out;
  }

  friend auto operator<=>(const ValueFunction&, const ValueFunction&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct EnumerationOptions {
  std::uint64_t node_budget = 100'000'000;
};

namespace detail {

// Backtracking search in canonical outcome order, 0 branch before 1, so
// solutions come out in lexicographic order of their 0/1 vectors.
class ValueFunctionSearch {
 public:
  ValueFunctionSearch(const Scenario& s, EnumerationOptions opts)
      : n_(s.size()), budget_(opts.node_budget), sets_of_(n_) {
    for (const auto& ctx : s.context_indices()) add_set(ctx, true);
    for (const auto& part : s.partial_indices()) add_set(part, false);
    value_.assign(n_, kUnset);
  }

  /// Fixes an outcome to 1 before the search starts. Returns false on conflict.
  bool pin(std::size_t i) { return assign(i, 1); }

  /// Invokes `visit` on every value function consistent with the pins.
  void run(const std::function<void(const ValueFunction&)>& visit) {
    if (!initial_propagation()) return;
    descend(0, visit);
  }

 private:
  static constexpr std::int8_t kUnset = -1;

  void add_set(const std::vector<std::size_t>& members, bool exact) {
    const std::size_t id = members_.size();
    members_.push_back(members);
    exact_.push_back(exact);
    ones_.push_back(0);
    open_.push_back(static_cast<int>(members.size()));
    for (auto m : members) sets_of_[m].push_back(id);
  }

  bool initial_propagation() {
    if (initialized_) return consistent_;
    initialized_ = true;
    for (std::size_t id = 0; id < members_.size() && consistent_; ++id) {
      if (exact_[id] && ones_[id] == 0 && open_[id] == 1) {
        for (auto m : members_[id]) {
          if (value_[m] == kUnset) consistent_ = assign(m, 1);
        }
      }
      if (exact_[id] && ones_[id] == 0 && open_[id] == 0) consistent_ = false;
    }
    return consistent_;
  }

  // Assigns and propagates; on conflict the trail still records everything
  // so the caller can undo.
  bool assign(std::size_t first, std::int8_t first_value) {
    queue_.clear();
    queue_.emplace_back(first, first_value);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const auto [i, v] = queue_[q];
      if (value_[i] != kUnset) {
        if (value_[i] != v) return false;
        continue;
      }
      value_[i] = v;
      trail_.push_back(i);
      for (auto id : sets_of_[i]) {
        --open_[id];
        if (v == 1) ++ones_[id];
      }
      for (auto id : sets_of_[i]) {
        if (ones_[id] > 1) return false;
        if (ones_[id] == 1 && open_[id] > 0) {
          for (auto m : members_[id]) {
            if (value_[m] == kUnset) queue_.emplace_back(m, 0);
          }
        } else if (exact_[id] && ones_[id] == 0) {
          if (open_[id] == 0) return false;
          if (open_[id] == 1) {
            for (auto m : members_[id]) {
              if (value_[m] == kUnset) queue_.emplace_back(m, 1);
            }
          }
        }
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto i = trail_.back();
      trail_.pop_back();
      for (auto id : sets_of_[i]) {
        ++open_[id];
        if (value_[i] == 1) --ones_[id];
      }
      value_[i] = kUnset;
    }
  }

  void descend(std::size_t pos, const std::function<void(const ValueFunction&)>& visit) {
    if (++nodes_ > budget_) {
      throw ResourceLimitError("value-function search exceeded the node budget of " + std::to_string(budget_));
    }
    while (pos < n_ && value_[pos] != kUnset) ++pos;
    if (pos == n_) {
      std::vector<std::uint8_t> bits(n_);
      for (std::size_t i = 0; i < n_; ++i) bits[i] = static_cast<std::uint8_t>(value_[i]);
      visit(ValueFunction(std::move(bits)));
      return;
    }
    for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
      const auto mark = trail_.size();
      if (assign(pos, v)) descend(pos + 1, visit);
      undo_to(mark);
    }
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool initialized_ = false;
  bool consistent_ = true;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<bool> exact_;
  std::vector<int> ones_;
  std::vector<int> open_;
  std::vector<std::vector<std::size_t>> sets_of_;
  std::vector<std::int8_t> value_;
  std::vector<std::size_t> trail_;
  std::vector<std::pair<std::size_t, std::int8_t>> queue_;
};

}  // namespace detail

/// Calls `visit` for every value function, in lexicographic order.
inline void for_each_value_function(const Scenario& s, const std::function<void(const ValueFunction&)>& visit,
                                    EnumerationOptions opts = {}) {
  detail::ValueFunctionSearch search(s, opts);
  search.run(visit);
}

inline std::vector<ValueFunction> enumerate_value_functions(const Scenario& s, EnumerationOptions opts = {}) {
  std::vector<ValueFunction> out;
  for_each_value_function(s, [&](const ValueFunction& v) { out.push_back(v); }, opts);
  return out;
}

/// Value functions assigning 1 to every label in `required`.
inline std::vector<ValueFunction> definite_intersection(const Scenario& s, const std::vector<Label>& required,
                                                        EnumerationOptions opts = {}) {
  std::vector<std::size_t> idx;
  for (const auto& label : required) idx.push_back(s.require_index(label));
  detail::ValueFunctionSearch search(s, opts);
  std::vector<ValueFunction> out;
  for (auto i : idx) {
    if (!search.pin(i)) return out;
  }
  search.run([&](const ValueFunction& v) { out.push_back(v); });
  return out;
}

struct ClassicalBoundResult {
  Rational bound;
  ValueFunction maximizer;
  std::size_t value_function_count = 0;
};

/// Maximum of the functional over value functions. The reported maximizer is
/// the first one in enumeration order.
inline ClassicalBoundResult classical_bound(const Scenario& s, const Coefficients& coeffs,
                                            EnumerationOptions opts = {}) {
  const auto c = s.dense(coeffs);
  std::optional<ClassicalBoundResult> best;
  std::size_t count = 0;
  for_each_value_function(
      s,
      [&](const ValueFunction& v) {
        ++count;
        Rational total = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i]) total += c[i];
        }
        if (!best || total > best->bound) best = ClassicalBoundResult{std::move(total), v, 0};
      },
      opts);
  if (!best) throw EmptyPolytopeError("scenario has no value functions; the classical bound is undefined");
  best->value_function_count = count;
  return *best;
}

/// Probability assignment over outcomes. Missing labels are 0.
using StateAssignment = std::map<Label, Rational>;

/// Dense form of a state after checking it lies in the state polytope.
inline std::vector<Rational> check_state(const Scenario& s, const StateAssignment& omega) {
  std::vector<Rational> w(s.size());
  for (const auto& [label, value] : omega) {
    const auto idx = s.index_of(label);
    if (!idx) throw NotAStateError("state mentions unknown outcome '" + label + "'");
    if (value < 0 || value > 1) throw NotAStateError("state value of '" + label + "' is outside [0,1]");
    w[*idx] = value;
  }
  for (std::size_t k = 0; k < s.contexts().size(); ++k) {
    Rational total = 0;
    for (auto i : s.context_indices()[k]) total += w[i];
    if (total != 1) throw NotAStateError("context sum is " + to_string(total) + ", not 1");
  }
  for (std::size_t k = 0; k < s.partial_contexts().size(); ++k) {
    Rational total = 0;
    for (auto i : s.partial_indices()[k]) total += w[i];
    if (total > 1) throw NotAStateError("partial context sum is " + to_string(total) + ", above 1");
  }
  return w;
}

struct NoncontextualDecomposition {
  /// Value functions with strictly positive weight.
  std::vector<std::pair<ValueFunction, Rational>> weights;
};

enum class Membership { member, not_member, empty_polytope };

struct MembershipResult {
  Membership verdict = Membership::not_member;
  std::optional<NoncontextualDecomposition> decomposition;
};

/// omega(a) = sum_v p_v v(a) for the given decomposition.
inline std::vector<Rational> reconstruct_state(const Scenario& s, const NoncontextualDecomposition& d) {
  std::vector<Rational> w(s.size());
  for (const auto& [v, p] : d.weights) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (v[i]) w[i] += p;
    }
  }
  return w;
}

/// Decides whether a state is a convex mixture of value functions, with an
/// exact witness when it is. Throws NotAStateError for non-states.
inline MembershipResult is_noncontextual_state(const Scenario& s, const StateAssignment& omega,
                                               EnumerationOptions opts = {}) {
  const auto w = check_state(s, omega);
  const auto vfs = enumerate_value_functions(s, opts);
  if (vfs.empty()) return {Membership::empty_polytope, std::nullopt};

  std::vector<std::string> names;
  names.reserve(vfs.size());
  for (std::size_t k = 0; k < vfs.size(); ++k) names.push_back("p" + std::to_string(k));
  auto lp = LinearProgram::with_variables(std::move(names));
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Rational> row(vfs.size());
    for (std::size_t k = 0; k < vfs.size(); ++k) row[k] = vfs[k][i] ? 1 : 0;
    lp.add_row(std::move(row), Relation::equal, w[i]);
  }
  lp.add_row(std::vector<Rational>(vfs.size(), Rational(1)), Relation::equal, 1);

  const auto result = solve(lp);
  if (result.status != LPStatus::optimal) return {Membership::not_member, std::nullopt};
  NoncontextualDecomposition d;
  for (std::size_t k = 0; k < vfs.size(); ++k) {
    if (result.point[k] != 0) d.weights.emplace_back(vfs[k], result.point[k]);
  }
  return {Membership::member, std::move(d)};
}

/// max over value functions of the number of W-outcomes assigned 1.
inline Rational brute_force_antiset_bound(const Scenario& s, const std::vector<Label>& w, EnumerationOptions opts = {}) {
  Coefficients ones;
  for (const auto& label : w) ones[label] = 1;
  return classical_bound(s, ones, opts).bound;
}

}  // namespace antictx
