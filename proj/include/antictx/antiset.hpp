#pragma once

// Pairwise antisets and the noncontextuality inequalities they imply: for a
// strong antiset W every noncontextual state has sum_{a in W} w(a) <= 1; for
// a weak antiset the same holds for states with w(c) = 1.

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "antictx/antidist.hpp"
#include "antictx/cliques.hpp"
#include "antictx/errors.hpp"
#include "antictx/quantum.hpp"
#include "antictx/rational.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

enum class AntisetKind { strong, weak };

inline const char* to_string(AntisetKind k) { return k == AntisetKind::strong ? "strong" : "weak"; }

struct TripleRecord {
  Label a;
  Label b;
  Label c;
  AntidistVerdict verdict;
};

struct PairwiseAntiset {
  AntisetKind kind = AntisetKind::strong;
  std::vector<Label> members;    // sorted
  std::vector<Label> principal;  // principal context, or the single principal outcome
  std::vector<TripleRecord> triple_log;
};

class FailedTripleError : public Error {
 public:
  FailedTripleError(TripleRecord record)
      : Error("triple {" + record.a + ", " + record.b + ", " + record.c +
              "} is not antidistinguishable (margin_strict " + std::to_string(record.verdict.margin_strict) +
              ", margin_quadratic " + std::to_string(record.verdict.margin_quadratic) + ")"),
        record_(std::move(record)) {}
  [[nodiscard]] const TripleRecord& record() const noexcept { return record_; }

 private:
  TripleRecord record_;
};

namespace detail {

inline std::vector<Label> sorted_unique(std::vector<Label> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline AntidistVerdict check_triple(const PureStateSet& states, const Label& a, const Label& b, const Label& c,
                                    const Tolerances& tol) {
  return triple_antidistinguishable(TripleOverlaps::of(states.vector(a), states.vector(b), states.vector(c), tol.norm),
                                    tol);
}

inline void require_basis(const PureStateSet& states, const std::vector<Label>& principal, const Tolerances& tol) {
  if (principal.size() != static_cast<std::size_t>(states.dimension())) {
    throw NotABasisError("principal context has " + std::to_string(principal.size()) + " states, dimension is " +
                         std::to_string(states.dimension()));
  }
  for (std::size_t i = 0; i < principal.size(); ++i) {
    for (std::size_t j = i + 1; j < principal.size(); ++j) {
      if (overlap(states.vector(principal[i]), states.vector(principal[j])) > tol.orth) {
        throw NotABasisError("principal states '" + principal[i] + "' and '" + principal[j] + "' are not orthogonal");
      }
    }
  }
}

inline void require_members(const PureStateSet& states, const std::vector<Label>& labels) {
  for (const auto& l : labels) {
    if (!states.index_of(l)) throw MissingLabelError("no state labelled '" + l + "'");
  }
}

// Every unordered pair of `members` against every principal label, in
// lexicographic (a, b, c) order; throws on the first failure.
inline std::vector<TripleRecord> check_all_triples(const PureStateSet& states, const std::vector<Label>& members,
                                                   const std::vector<Label>& principal, const Tolerances& tol) {
  std::vector<TripleRecord> log;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      for (const auto& c : principal) {
        TripleRecord rec{members[i], members[j], c, check_triple(states, members[i], members[j], c, tol)};
        if (!rec.verdict.antidistinguishable) throw FailedTripleError(std::move(rec));
        log.push_back(std::move(rec));
      }
    }
  }
  return log;
}

}  // namespace detail

/// Checks |W|(|W|-1)/2 * d triples against an orthonormal principal basis.
inline PairwiseAntiset verify_strong_antiset(const PureStateSet& states, const std::vector<Label>& members,
                                             const std::vector<Label>& principal, const Tolerances& tol = {}) {
  auto w = detail::sorted_unique(members);
  auto p = detail::sorted_unique(principal);
  detail::require_members(states, w);
  detail::require_members(states, p);
  if (w.size() < 2) throw PreconditionError("a pairwise antiset needs at least two members");
  detail::require_basis(states, p, tol);
  for (const auto& m : w) {
    if (std::binary_search(p.begin(), p.end(), m)) {
      throw PreconditionError("member '" + m + "' is also in the principal context");
    }
  }
  auto log = detail::check_all_triples(states, w, p, tol);
  return {AntisetKind::strong, std::move(w), std::move(p), std::move(log)};
}

/// Checks every pair of W together with a single principal outcome.
inline PairwiseAntiset verify_weak_antiset(const PureStateSet& states, const std::vector<Label>& members,
                                           const Label& principal, const Tolerances& tol = {}) {
  auto w = detail::sorted_unique(members);
  detail::require_members(states, w);
  detail::require_members(states, {principal});
  if (w.size() < 2) throw PreconditionError("a pairwise antiset needs at least two members");
  if (std::binary_search(w.begin(), w.end(), principal)) {
    throw PreconditionError("principal outcome '" + principal + "' must not be a member");
  }
  auto log = detail::check_all_triples(states, w, {principal}, tol);
  return {AntisetKind::weak, std::move(w), {principal}, std::move(log)};
}

/// Maximal strong antisets inside `pool`: maximal cliques (size >= 2) of the
/// graph joining a and b when every triple (a, b, c), c principal, passes.
inline std::vector<PairwiseAntiset> find_strong_antisets(const PureStateSet& states, const std::vector<Label>& pool,
                                                         const std::vector<Label>& principal,
                                                         const Tolerances& tol = {}) {
  const auto candidates = detail::sorted_unique(pool);
  const auto p = detail::sorted_unique(principal);
  detail::require_members(states, candidates);
  detail::require_members(states, p);
  detail::require_basis(states, p, tol);
  for (const auto& m : candidates) {
    if (std::binary_search(p.begin(), p.end(), m)) throw PreconditionError("pool overlaps the principal context");
  }

  auto adj = empty_graph(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const bool ok = std::all_of(p.begin(), p.end(), [&](const Label& c) {
        return detail::check_triple(states, candidates[i], candidates[j], c, tol).antidistinguishable;
      });
      if (ok) add_edge(adj, i, j);
    }
  }
  std::vector<PairwiseAntiset> out;
  for (const auto& clique : maximal_cliques(adj)) {
    if (clique.size() < 2) continue;
    std::vector<Label> w;
    for (auto i : clique) w.push_back(candidates[i]);
    auto log = detail::check_all_triples(states, w, p, tol);
    out.push_back({AntisetKind::strong, std::move(w), p, std::move(log)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inequalities

enum class InequalityKind { state_independent, state_dependent };

inline const char* to_string(InequalityKind k) {
  return k == InequalityKind::state_independent ? "state-independent" : "state-dependent";
}

struct SideConstraint {
  Label label;
  Rational value;

  friend bool operator==(const SideConstraint&, const SideConstraint&) = default;
};

/// sum_a coefficients[a] w(a) <= bound, for noncontextual states w meeting
/// every side constraint w(label) = value.
struct NoncontextualityInequality {
  Coefficients coefficients;
  Rational bound;
  InequalityKind kind = InequalityKind::state_independent;
  std::vector<SideConstraint> side_constraints;
  std::string provenance;
};

inline NoncontextualityInequality inequality_from_antiset(const PairwiseAntiset& aset) {
  NoncontextualityInequality ineq;
  for (const auto& m : aset.members) ineq.coefficients[m] = 1;
  ineq.bound = 1;
  std::ostringstream os;
  os << to_string(aset.kind) << " pairwise antiset of " << aset.members.size() << " outcomes, "
     << aset.triple_log.size() << " antidistinguishable triples";
  if (aset.kind == AntisetKind::strong) {
    ineq.kind = InequalityKind::state_independent;
    os << " over principal context {";
    for (std::size_t i = 0; i < aset.principal.size(); ++i) os << (i ? "," : "") << aset.principal[i];
    os << "}";
  } else {
    ineq.kind = InequalityKind::state_dependent;
    ineq.side_constraints.push_back({aset.principal.front(), Rational(1)});
    os << " with principal outcome " << aset.principal.front();
  }
  ineq.provenance = os.str();
  return ineq;
}

struct AddInequality {
  NoncontextualityInequality other;
};
/// Adds the normalization sum_{a in M} w(a) = 1 of a context M.
struct AddContextNormalization {
  std::vector<Label> context;
};
/// Adds w(c) for an outcome already pinned to 1 by a side constraint.
struct AddConstrainedOutcome {
  Label label;
};
using AugmentMode = std::variant<AddInequality, AddContextNormalization, AddConstrainedOutcome>;

inline NoncontextualityInequality augment_inequality(NoncontextualityInequality ineq, const AugmentMode& mode) {
  if (const auto* add = std::get_if<AddInequality>(&mode)) {
    for (const auto& [label, c] : add->other.coefficients) ineq.coefficients[label] += c;
    ineq.bound += add->other.bound;
    for (const auto& sc : add->other.side_constraints) {
      const auto clash = std::find_if(ineq.side_constraints.begin(), ineq.side_constraints.end(),
                                      [&](const SideConstraint& x) { return x.label == sc.label; });
      if (clash == ineq.side_constraints.end()) ineq.side_constraints.push_back(sc);
      else if (clash->value != sc.value) throw ConstraintMismatchError("conflicting side constraints on '" + sc.label + "'");
    }
    ineq.provenance += "; plus [" + add->other.provenance + "]";
  } else if (const auto* norm = std::get_if<AddContextNormalization>(&mode)) {
    const auto ctx = detail::sorted_unique(norm->context);
    if (ctx.empty()) throw PreconditionError("context normalization needs a nonempty context");
    for (const auto& label : ctx) ineq.coefficients[label] += 1;
    ineq.bound += 1;
    ineq.provenance += "; plus normalization of a " + std::to_string(ctx.size()) + "-outcome context";
  } else {
    const auto& label = std::get<AddConstrainedOutcome>(mode).label;
    const auto it = std::find_if(ineq.side_constraints.begin(), ineq.side_constraints.end(),
                                 [&](const SideConstraint& x) { return x.label == label; });
    if (it == ineq.side_constraints.end() || it->value != 1) {
      throw ConstraintMismatchError("'" + label + "' carries no side constraint w = 1");
    }
    ineq.coefficients[label] += 1;
    ineq.bound += 1;
    ineq.provenance += "; plus constrained outcome " + label + " (relies on w(" + label + ") = 1)";
  }
  // Drop cancelled terms so the coefficient map stays canonical.
  for (auto it = ineq.coefficients.begin(); it != ineq.coefficients.end();) {
    it = it->second == 0 ? ineq.coefficients.erase(it) : std::next(it);
  }
  ineq.kind = ineq.side_constraints.empty() ? InequalityKind::state_independent : InequalityKind::state_dependent;
  return ineq;
}

struct EvaluationReport {
  double lhs = 0;
  Rational bound;
  bool violated = false;
  double margin = 0;  // lhs - bound
  bool side_constraints_satisfied = true;
};

/// Quantum prediction of the left-hand side at rho. A violation needs
/// lhs > bound + eps and every side constraint satisfied within eps.
inline EvaluationReport evaluate_inequality(const NoncontextualityInequality& ineq, const PureStateSet& states,
                                            const DensityOperator& rho, const Tolerances& tol = {}) {
  for (const auto& [label, _] : ineq.coefficients) {
    if (!states.index_of(label)) throw MissingLabelError("inequality mentions '" + label + "' but no such state");
  }
  EvaluationReport r;
  r.lhs = quantum_value(states, to_real(ineq.coefficients), rho);
  r.bound = ineq.bound;
  r.margin = r.lhs - to_double(ineq.bound);
  for (const auto& sc : ineq.side_constraints) {
    if (std::abs(rho.probability(states.vector(sc.label)) - to_double(sc.value)) > tol.norm) {
      r.side_constraints_satisfied = false;
    }
  }
  r.violated = r.margin > tol.norm && r.side_constraints_satisfied;
  return r;
}

// ---------------------------------------------------------------------------
// Inequality JSON

inline nlohmann::json inequality_to_json(const NoncontextualityInequality& ineq) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [label, c] : ineq.coefficients) coeffs[label] = to_string(c);
  nlohmann::json sides = nlohmann::json::array();
  for (const auto& sc : ineq.side_constraints) sides.push_back({{"label", sc.label}, {"value", to_string(sc.value)}});
  return {{"coefficients", coeffs},
          {"bound", to_string(ineq.bound)},
          {"kind", to_string(ineq.kind)},
          {"side_constraints", sides},
          {"provenance", ineq.provenance}};
}

/// Accepts "p/q" strings or JSON integers.
inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  throw ParseError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline Coefficients parse_coefficient_map(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("coefficients must be an object of label -> rational");
  Coefficients out;
  for (const auto& [label, value] : j.items()) out[label] = json_rational(value);
  return out;
}

inline NoncontextualityInequality parse_inequality(const nlohmann::json& doc) {
  detail::check_keys(doc, {"coefficients", "bound", "kind", "side_constraints", "provenance"}, "inequality");
  if (!doc.contains("coefficients") || !doc.contains("bound")) throw ParseError("inequality needs coefficients and bound");
  NoncontextualityInequality ineq;
  ineq.coefficients = parse_coefficient_map(doc.at("coefficients"));
  ineq.bound = json_rational(doc.at("bound"));
  if (doc.contains("side_constraints")) {
    for (const auto& sc : doc.at("side_constraints")) {
      detail::check_keys(sc, {"label", "value"}, "side constraint");
      if (!sc.contains("label") || !sc.at("label").is_string() || !sc.contains("value")) {
        throw ParseError("side constraint needs label and value");
      }
      ineq.side_constraints.push_back({sc.at("label").get<std::string>(), json_rational(sc.at("value"))});
    }
  }
  ineq.kind = ineq.side_constraints.empty() ? InequalityKind::state_independent : InequalityKind::state_dependent;
  if (doc.contains("kind")) {
    const auto kind = doc.at("kind").is_string() ? doc.at("kind").get<std::string>() : std::string();
    if (kind != to_string(ineq.kind)) throw ParseError("inequality kind does not match its side constraints");
  }
  if (doc.contains("provenance") && doc.at("provenance").is_string()) ineq.provenance = doc.at("provenance").get<std::string>();
  return ineq;
}

}  // namespace antictx
