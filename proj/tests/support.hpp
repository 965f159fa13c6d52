#pragma once

// Independent oracles and random generators shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "antictx/antictx.hpp"

namespace testing_support {

using namespace antictx;

inline std::string fixture(const std::string& name) { return std::string(ANTICTX_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream f(fixture(name), std::ios::binary);
  return detail::read_all(f);
}

/// Random scenario on at most `max_outcomes` outcomes; families are reduced
/// to antichains so the result always validates.
inline Scenario random_scenario(std::mt19937_64& rng, int max_outcomes, int max_contexts = 3, int max_partials = 4) {
  for (;;) {
    const int n = std::uniform_int_distribution<int>(1, max_outcomes)(rng);
    std::vector<Label> x;
    for (int i = 0; i < n; ++i) x.push_back("o" + std::to_string(i));
    auto family = [&](int max_sets) {
      std::set<LabelSet> fam;
      const int count = std::uniform_int_distribution<int>(0, max_sets)(rng);
      for (int k = 0; k < count; ++k) {
        const int size = std::uniform_int_distribution<int>(1, std::min(n, 4))(rng);
        auto pool = x;
        std::shuffle(pool.begin(), pool.end(), rng);
        LabelSet set(pool.begin(), pool.begin() + size);
        std::sort(set.begin(), set.end());
        fam.insert(set);
      }
      std::vector<std::vector<Label>> out;
      for (const auto& a : fam) {
        const bool dominated = std::any_of(fam.begin(), fam.end(), [&](const LabelSet& b) {
          return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
        });
        if (!dominated) out.push_back(a);
      }
      return out;
    };
    auto contexts = family(max_contexts);
    auto partials = family(max_partials);
    std::erase_if(partials, [&](const auto& p) { return std::find(contexts.begin(), contexts.end(), p) != contexts.end(); });
    ScenarioCandidate raw{x, contexts, partials};
    if (validate_scenario(raw).valid) return Scenario(raw);
  }
}

/// All 0/1 vectors over the outcomes, filtered by the defining conditions.
inline std::vector<std::vector<std::uint8_t>> naive_value_functions(const Scenario& s) {
  std::vector<std::vector<std::uint8_t>> out;
  const auto n = s.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>((mask >> (n - 1 - i)) & 1U);
    auto ones = [&](const std::vector<std::size_t>& set) {
      int c = 0;
      for (auto i : set) c += v[i];
      return c;
    };
    bool ok = true;
    for (const auto& m : s.context_indices()) ok = ok && ones(m) == 1;
    for (const auto& p : s.partial_indices()) ok = ok && ones(p) <= 1;
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin oracle for small linear programs.

/// a . x <= b
struct Ineq {
  std::vector<Rational> a;
  Rational b;
};

inline Ineq normalized(Ineq q) {
  // Scale so the first nonzero coefficient has magnitude 1.
  for (const auto& c : q.a) {
    if (c != 0) {
      const Rational s = abs(c);
      for (auto& x : q.a) x /= s;
      q.b /= s;
      break;
    }
  }
  return q;
}

/// Eliminates variable k; the result no longer involves it. Parallel
/// inequalities keep only the tightest bound and trivial ones are dropped.
inline std::vector<Ineq> eliminate(const std::vector<Ineq>& system, std::size_t k) {
  std::vector<Ineq> pos, neg;
  std::map<std::vector<Rational>, Rational> out;
  auto keep = [&](Ineq q) {
    q = normalized(std::move(q));
    const bool zero = std::all_of(q.a.begin(), q.a.end(), [](const Rational& x) { return x == 0; });
    if (zero && q.b >= 0) return;
    auto [it, fresh] = out.emplace(q.a, q.b);
    if (!fresh && q.b < it->second) it->second = q.b;
  };
  for (const auto& q : system) {
    if (q.a[k] > 0) pos.push_back(q);
    else if (q.a[k] < 0) neg.push_back(q);
    else keep(q);
  }
  for (const auto& p : pos) {
    for (const auto& m : neg) {
      Ineq r{std::vector<Rational>(p.a.size()), 0};
      const Rational sp = -m.a[k];
      const Rational sm = p.a[k];
      for (std::size_t i = 0; i < p.a.size(); ++i) r.a[i] = sp * p.a[i] + sm * m.a[i];
      r.a[k] = 0;
      r.b = sp * p.b + sm * m.b;
      keep(std::move(r));
    }
  }
  std::vector<Ineq> result;
  for (auto& [a, b] : out) result.push_back({a, b});
  return result;
}

struct OracleResult {
  LPStatus status = LPStatus::infeasible;
  Rational value;
};

/// Projects {x : rows, bounds} onto t = objective . x and reads off the
/// largest feasible t.
inline OracleResult fourier_motzkin_oracle(const LinearProgram& lp) {
  const auto n = lp.num_variables();
  const auto t = n;
  std::vector<Ineq> sys;
  auto push = [&](std::vector<Rational> a, Rational b) {
    a.resize(n + 1);
    sys.push_back({std::move(a), std::move(b)});
  };
  for (const auto& row : lp.rows) {
    std::vector<Rational> neg(row.coefficients.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -row.coefficients[i];
    if (row.relation != Relation::greater_equal) push(row.coefficients, row.rhs);
    if (row.relation != Relation::less_equal) push(neg, -row.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n + 1);
    if (lp.lower[i]) {
      e[i] = -1;
      push(e, -*lp.lower[i]);
    }
    if (lp.upper[i]) {
      e.assign(n + 1, Rational(0));
      e[i] = 1;
      push(e, *lp.upper[i]);
    }
  }
  std::vector<Rational> link(n + 1);
  for (std::size_t i = 0; i < n; ++i) link[i] = -lp.objective[i];
  link[t] = 1;
  push(link, 0);
  for (auto& x : link) x = -x;
  push(link, 0);

  // Cheapest variable first keeps the intermediate systems small.
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n, best_cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      std::size_t p = 0, m = 0;
      for (const auto& q : sys) {
        p += q.a[k] > 0;
        m += q.a[k] < 0;
      }
      if (best == n || p * m < best_cost) best = k, best_cost = p * m;
    }
    done[best] = true;
    sys = eliminate(sys, best);
  }

  std::optional<Rational> upper;
  std::optional<Rational> lower;
  for (const auto& q : sys) {
    if (q.a[t] == 0) {
      if (q.b < 0) return {LPStatus::infeasible, 0};
    } else if (q.a[t] > 0) {
      const Rational u = q.b / q.a[t];
      if (!upper || u < *upper) upper = u;
    } else {
      const Rational l = q.b / q.a[t];
      if (!lower || l > *lower) lower = l;
    }
  }
  if (upper && lower && *lower > *upper) return {LPStatus::infeasible, 0};
  if (!upper) return {LPStatus::unbounded, 0};
  return {LPStatus::optimal, *upper};
}

inline LinearProgram random_lp(std::mt19937_64& rng, std::size_t max_vars = 3, std::size_t max_rows = 4) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> rhs(-4, 6);
  std::uniform_int_distribution<int> pick(0, 5);
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_vars)(rng);
  const auto m = std::uniform_int_distribution<std::size_t>(0, max_rows)(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  auto lp = LinearProgram::with_variables(names);
  for (std::size_t i = 0; i < n; ++i) {
    lp.objective[i] = coeff(rng);
    switch (pick(rng)) {
      case 0: lp.lower[i] = std::nullopt; break;
      case 1: lp.lower[i] = Rational(-2); break;
      case 2: lp.upper[i] = Rational(3); break;
      default: break;
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Rational> a(n);
    for (auto& x : a) x = coeff(rng);
    const int rel = pick(rng) % 3;
    lp.add_row(std::move(a), rel == 0 ? Relation::less_equal : rel == 1 ? Relation::equal : Relation::greater_equal,
               rhs(rng));
  }
  return lp;
}

/// Exact residual check of a claimed solution point.
inline bool satisfies_all(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_variables()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (lp.lower[i] && x[i] < *lp.lower[i]) return false;
    if (lp.upper[i] && x[i] > *lp.upper[i]) return false;
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < x.size(); ++i) lhs += row.coefficients[i] * x[i];
    if (row.relation == Relation::less_equal && lhs > row.rhs) return false;
    if (row.relation == Relation::equal && lhs != row.rhs) return false;
    if (row.relation == Relation::greater_equal && lhs < row.rhs) return false;
  }
  return true;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace testing_support
