#pragma once

// Antidistinguishability: the three-state overlap criterion and its simpler
// sufficient corollary, certificate checks for n states, and the
// combinatorial notion on abstract scenarios.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "antictx/errors.hpp"
#include "antictx/quantum.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

/// Squared overlaps of a triple {a1, a2, a3}: x1 = |<a2|a3>|^2,
/// x2 = |<a1|a3>|^2, x3 = |<a1|a2>|^2. Clamped to [0, 1] on construction.
struct TripleOverlaps {
  double x1 = 0;
  double x2 = 0;
  double x3 = 0;

  static TripleOverlaps make(double x1, double x2, double x3, double eps = 1e-9) {
    auto clamp = [eps](double x) {
      if (!(x >= -eps && x <= 1.0 + eps)) throw OutOfRangeError("squared overlap outside [0,1]");
      return std::clamp(x, 0.0, 1.0);
    };
    return {clamp(x1), clamp(x2), clamp(x3)};
  }

  static TripleOverlaps of(const Vector& a1, const Vector& a2, const Vector& a3, double eps = 1e-9) {
    return make(overlap(a2, a3), overlap(a1, a3), overlap(a1, a2), eps);
  }
};

enum class Via { theorem3, corollary1, combinatorial, certificate };

inline const char* to_string(Via v) {
  switch (v) {
    case Via::theorem3: return "theorem3";
    case Via::corollary1: return "corollary1";
    case Via::combinatorial: return "combinatorial";
    case Via::certificate: return "certificate";
  }
  return "?";
}

struct AntidistVerdict {
  bool antidistinguishable = false;
  Via via = Via::theorem3;
  double margin_strict = 0;     // 1 - (x1 + x2 + x3)
  double margin_quadratic = 0;  // (x1 + x2 + x3 - 1)^2 - 4 x1 x2 x3
  bool boundary = false;        // |margin_quadratic| <= eps_quad
};

/// Three pure states are antidistinguishable iff x1 + x2 + x3 < 1 and
/// (x1 + x2 + x3 - 1)^2 >= 4 x1 x2 x3. The strict sum is tested with
/// margin > eps_strict; the quadratic with slack -eps_quad so that exact
/// equality counts.
inline AntidistVerdict triple_antidistinguishable(const TripleOverlaps& x, const Tolerances& tol = {}) {
  const double sum = x.x1 + x.x2 + x.x3;
  AntidistVerdict v;
  v.via = Via::theorem3;
  v.margin_strict = 1.0 - sum;
  v.margin_quadratic = (sum - 1.0) * (sum - 1.0) - 4.0 * x.x1 * x.x2 * x.x3;
  v.boundary = std::abs(v.margin_quadratic) <= tol.quad;
  v.antidistinguishable = v.margin_strict > tol.strict && v.margin_quadratic >= -tol.quad;
  return v;
}

/// Sufficient condition: every squared overlap at most 1/4.
inline bool corollary_check(const TripleOverlaps& x, const Tolerances& tol = {}) {
  return std::max({x.x1, x.x2, x.x3}) <= 0.25 + tol.quad;
}

// ---------------------------------------------------------------------------
// Certificates

/// Targets a1..an together with an orthonormal basis a1_perp..ad_perp whose
/// first n vectors are paired with the targets in order.
struct AntidistCertificate {
  std::vector<Label> targets;
  PureStateSet basis;
};

struct CertificateReport {
  bool valid = false;
  double orthonormality_residual = 0;  // max |<b_i|b_j> - delta_ij|
  double paired_residual = 0;          // max |<a_j_perp|a_j>|^2, j <= n
  double span_residual = 0;            // max |<a_k_perp|a_j>|^2, k > n
};

inline CertificateReport verify_certificate(const PureStateSet& states, const AntidistCertificate& cert,
                                            const Tolerances& tol = {}) {
  const int d = states.dimension();
  if (cert.basis.dimension() != d) throw DimensionMismatchError("certificate basis dimension differs from the states");
  if (cert.basis.size() != static_cast<std::size_t>(d)) {
    throw DimensionMismatchError("certificate basis must contain exactly d vectors");
  }
  const auto n = cert.targets.size();
  if (n == 0 || n > static_cast<std::size_t>(d)) throw PreconditionError("certificate needs 1 <= n <= d targets");

  CertificateReport r;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex ip = cert.basis.vector(static_cast<std::size_t>(i)).dot(cert.basis.vector(static_cast<std::size_t>(j)));
      r.orthonormality_residual = std::max(r.orthonormality_residual, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& a = states.vector(cert.targets[j]);
    r.paired_residual = std::max(r.paired_residual, overlap(cert.basis.vector(j), a));
    for (std::size_t k = n; k < static_cast<std::size_t>(d); ++k) {
      r.span_residual = std::max(r.span_residual, overlap(cert.basis.vector(k), a));
    }
  }
  r.valid = r.orthonormality_residual <= tol.orth && r.paired_residual <= tol.orth && r.span_residual <= tol.orth;
  return r;
}

/// Certificate JSON: the vector-set format plus "targets". The states that
/// are not targets form the basis, in listed order. Returns the full state
/// set and the certificate.
inline std::pair<PureStateSet, AntidistCertificate> parse_certificate(const nlohmann::json& doc,
                                                                      double eps_norm = 1e-9) {
  detail::check_keys(doc, {"dimension", "states", "targets"}, "certificate");
  const int d = detail::parse_dimension(doc);
  auto all = detail::parse_state_list(doc);
  if (!doc.contains("targets")) throw ParseError("certificate lacks 'targets'");
  const auto targets = detail::parse_label_list(doc.at("targets"), "targets");
  std::vector<LabeledState> target_states;
  std::vector<LabeledState> basis;
  for (const auto& s : all) {
    (std::find(targets.begin(), targets.end(), s.label) != targets.end() ? target_states : basis).push_back(s);
  }
  PureStateSet states(d, std::move(target_states), eps_norm);
  for (const auto& t : targets) {
    if (!states.index_of(t)) throw ParseError("target '" + t + "' has no vector");
  }
  return {states, AntidistCertificate{targets, PureStateSet(d, std::move(basis), eps_norm)}};
}

// ---------------------------------------------------------------------------
// Combinatorial antidistinguishability on abstract scenarios

struct ScenarioAntidistWitness {
  LabelSet context;             // M
  std::vector<Label> targets;   // a_j, sorted
  std::vector<Label> perps;     // a_j_perp, aligned with targets
};

struct ScenarioAntidistResult {
  bool antidistinguishable = false;
  Via via = Via::combinatorial;
  std::optional<ScenarioAntidistWitness> witness;
};

/// Searches contexts M in canonical order and injective maps a_j -> a_j_perp
/// into M in lexicographic order. Requires a_j != a_j_perp, some set holding
/// {a_j, a_j_perp}, and for every leftover a in M: a is not a target and some
/// set holds {a, a_j} for every j. Returns the first witness found.
inline ScenarioAntidistResult scenario_antidistinguishable(const Scenario& s, std::vector<Label> targets) {
  if (targets.empty()) throw PreconditionError("antidistinguishability needs a nonempty outcome set");
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::vector<std::size_t> a;
  for (const auto& t : targets) a.push_back(s.require_index(t));
  const auto n = a.size();

  for (std::size_t m = 0; m < s.contexts().size(); ++m) {
    const auto& ctx = s.context_indices()[m];
    if (ctx.size() < n) continue;

    std::vector<std::size_t> choice(n);
    std::vector<bool> used(ctx.size(), false);
    bool found = false;

    auto leftovers_ok = [&]() {
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        if (used[k]) continue;
        const auto x = ctx[k];
        for (auto aj : a) {
          if (x == aj || !s.co_occur(x, aj)) return false;
        }
      }
      return true;
    };

    auto search = [&](auto&& self, std::size_t j) -> void {
      if (found) return;
      if (j == n) {
        found = leftovers_ok();
        return;
      }
      for (std::size_t k = 0; k < ctx.size() && !found; ++k) {
        if (used[k] || ctx[k] == a[j] || !s.co_occur(a[j], ctx[k])) continue;
        used[k] = true;
        choice[j] = k;
        self(self, j + 1);
        if (!found) used[k] = false;
      }
    };
    search(search, 0);

    if (found) {
      ScenarioAntidistWitness w{s.contexts()[m], targets, {}};
      for (std::size_t j = 0; j < n; ++j) w.perps.push_back(s.outcomes()[ctx[choice[j]]]);
      return {true, Via::combinatorial, std::move(w)};
    }
  }
  return {false, Via::combinatorial, std::nullopt};
}

}  // namespace antictx
