// One-shot reproduction of every worked example: each row recomputes the
// classical bound, the quantum prediction and the violation verdict, and
// compares them with the expected values.

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "antictx/antictx.hpp"
#include "cli.hpp"

namespace antictx::cli {
namespace {

struct RowBuilder {
  ReproduceRow row;
  std::vector<std::string> failures;
  std::ostringstream observed;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  ReproduceRow finish() {
    row.pass = failures.empty();
    row.observed = observed.str();
    if (!failures.empty()) {
      row.observed += row.observed.empty() ? "failed:" : " | failed:";
      for (const auto& f : failures) row.observed += " " + f + ";";
    }
    return row;
  }
};

template <class Body>
ReproduceRow run_row(std::string name, std::string expected, Body&& body) {
  RowBuilder b;
  b.row.example = std::move(name);
  b.row.expected = std::move(expected);
  try {
    body(b);
  } catch (const std::exception& e) {
    b.failures.push_back(std::string("exception: ") + e.what());
  }
  return b.finish();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

PureStateSet hooked(const ReproduceOptions& opts, std::string_view family, PureStateSet states) {
  return opts.state_hook ? opts.state_hook(family, std::move(states)) : states;
}

std::vector<Label> labels_where(const PureStateSet& s, bool (*pred)(const Label&)) {
  std::vector<Label> out;
  for (const auto& l : s.labels()) {
    if (pred(l)) out.push_back(l);
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Checks the lhs of an all-ones inequality is the same constant for several
// random states; returns the largest deviation from `expected`.
double max_random_deviation(const NoncontextualityInequality& ineq, const PureStateSet& states, double expected,
                            int samples, std::mt19937_64& rng, const Tolerances& tol) {
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    const auto rho = DensityOperator::random(states.dimension(), rng);
    worst = std::max(worst, std::abs(evaluate_inequality(ineq, states, rho, tol).lhs - expected));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Randomized property checks; the naive filter here is independent of the
// backtracking enumerator.

Scenario random_scenario(std::mt19937_64& rng, int max_outcomes) {
  for (;;) {
    const int n = std::uniform_int_distribution<int>(1, max_outcomes)(rng);
    std::vector<Label> x;
    for (int i = 0; i < n; ++i) x.push_back("o" + std::to_string(i));
    auto random_family = [&](int max_sets) {
      std::vector<LabelSet> fam;
      const int count = std::uniform_int_distribution<int>(0, max_sets)(rng);
      for (int k = 0; k < count; ++k) {
        const int size = std::uniform_int_distribution<int>(1, std::min(n, 4))(rng);
        auto pool = x;
        std::shuffle(pool.begin(), pool.end(), rng);
        LabelSet set(pool.begin(), pool.begin() + size);
        std::sort(set.begin(), set.end());
        fam.push_back(set);
      }
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
      std::vector<LabelSet> antichain;
      for (const auto& a : fam) {
        const bool dominated = std::any_of(fam.begin(), fam.end(), [&](const LabelSet& b) {
          return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
        });
        if (!dominated) antichain.push_back(a);
      }
      return antichain;
    };
    auto contexts = random_family(3);
    auto partials = random_family(4);
    std::erase_if(partials, [&](const LabelSet& p) { return std::binary_search(contexts.begin(), contexts.end(), p); });
    ScenarioCandidate raw{x, {contexts.begin(), contexts.end()}, {partials.begin(), partials.end()}};
    if (validate_scenario(raw).valid) return Scenario(raw);
  }
}

std::vector<std::vector<int>> naive_value_functions(const Scenario& s) {
  std::vector<std::vector<int>> out;
  const auto n = s.size();
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> (n - 1 - i)) & 1UL;
    auto ones = [&](const std::vector<std::size_t>& set) {
      int c = 0;
      for (auto i : set) c += v[i];
      return c;
    };
    const bool ok = std::all_of(s.context_indices().begin(), s.context_indices().end(),
                                [&](const auto& m) { return ones(m) == 1; }) &&
                    std::all_of(s.partial_indices().begin(), s.partial_indices().end(),
                                [&](const auto& m) { return ones(m) <= 1; });
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<ReproduceRow> reproduce(const ReproduceOptions& opts) {
  const auto& tol = opts.tol;
  const EnumerationOptions budget{opts.node_budget};
  std::mt19937_64 rng(opts.seed);
  std::vector<ReproduceRow> rows;

  rows.push_back(run_row("specker", "0 value functions; unique state (1/2,1/2,1/2)", [&](RowBuilder& b) {
    const auto s = specker_triangle();
    const auto vfs = enumerate_value_functions(s, budget);
    const auto u = state_uniqueness(s);
    b.observed << vfs.size() << " value functions; ";
    b.check(vfs.empty(), "value functions exist");
    const std::vector<Rational> half(3, Rational(1, 2));
    b.check(u.kind == StateUniqueness::unique && u.point == half, "state is not the unique point (1/2,1/2,1/2)");
    if (u.kind == StateUniqueness::unique) {
      b.observed << "unique state (" << to_string(u.point[0]) << "," << to_string(u.point[1]) << ","
                 << to_string(u.point[2]) << ")";
    }
  }));

  rows.push_back(run_row("no_state", "state polytope infeasible", [&](RowBuilder& b) {
    const auto r = state_optimize(no_state_example(), {{"a1", 1}});
    b.observed << "state LP " << to_string(r.status);
    b.check(r.status == LPStatus::infeasible, "state LP feasible");
  }));

  rows.push_back(run_row("klyachko", "classical 2; 11 value functions; state max 5/2; w=1/2 not noncontextual",
                         [&](RowBuilder& b) {
    const auto s = klyachko_scenario();
    Coefficients ones;
    StateAssignment half;
    for (const auto& a : s.outcomes()) {
      ones[a] = 1;
      half[a] = Rational(1, 2);
    }
    const auto cb = classical_bound(s, ones, budget);
    const auto lp = state_optimize(s, ones);
    const auto member = is_noncontextual_state(s, half, budget);
    b.row.classical_bound = to_string(cb.bound);
    b.observed << "classical " << to_string(cb.bound) << "; " << cb.value_function_count << " value functions; state max "
               << (lp.status == LPStatus::optimal ? to_string(lp.value) : to_string(lp.status))
               << "; w=1/2 " << (member.verdict == Membership::not_member ? "rejected" : "accepted");
    b.check(cb.bound == 2, "classical bound != 2");
    b.check(cb.value_function_count == 11 && naive_value_functions(s).size() == 11, "value-function count != 11");
    b.check(lp.status == LPStatus::optimal && lp.value == Rational(5, 2), "state maximum != 5/2");
    b.check(member.verdict == Membership::not_member, "w = 1/2 accepted as noncontextual");
  }));

  rows.push_back(run_row("antidist_example",
                         "vectors generate the antidistinguishability scenario; no {a1,a2,a3}-definite value function; "
                         "{a1,a2,a3} antidistinguishable via {a1_perp,a2_perp,a3_perp}",
                         [&](RowBuilder& b) {
    const auto states = hooked(opts, "caves_example", generate_states({Family::caves_example}));
    const auto generated = scenario_from_states(states, tol.orth);
    b.check(generated == antidist_example(), "generated scenario differs");
    const auto definite = definite_intersection(generated, {"a1", "a2", "a3"}, budget);
    b.check(definite.empty(), "definite value function exists");
    const auto anti = scenario_antidistinguishable(generated, {"a1", "a2", "a3"});
    const LabelSet expected_m{"a1_perp", "a2_perp", "a3_perp"};
    b.check(anti.antidistinguishable && anti.witness && anti.witness->context == expected_m, "wrong witness");
    b.observed << generated.contexts().size() << " context, " << generated.partial_contexts().size()
               << " partial contexts; " << definite.size() << " definite value functions; antidistinguishable="
               << (anti.antidistinguishable ? "yes" : "no");
  }));

  rows.push_back(run_row("yu_oh", "bound 1; quantum 4/3 for every state; violated", [&](RowBuilder& b) {
    const auto rays = hooked(opts, "yu_oh", generate_states({Family::yu_oh_rays}));
    const auto principal = generate_states({Family::yu_oh_principal});
    const auto all = rays.merged(principal);
    const auto aset = verify_strong_antiset(all, rays.labels(), principal.labels(), tol);
    b.check(aset.triple_log.size() == 18, "expected 18 triples");
    const bool all_boundary = std::all_of(aset.triple_log.begin(), aset.triple_log.end(), [&](const TripleRecord& t) {
      return t.verdict.boundary && std::abs(t.verdict.margin_quadratic) <= tol.quad;
    });
    b.check(all_boundary, "triples not on the quadratic boundary");
    const auto ineq = inequality_from_antiset(aset);
    b.check(ineq.bound == 1 && ineq.kind == InequalityKind::state_independent, "inequality bound != 1");
    const auto frame = frame_operator(rays, tol.frame);
    b.check(frame.lambda && close(*frame.lambda, 4.0 / 3.0, tol.frame), "frame not (4/3) I");
    const auto report = evaluate_inequality(ineq, all, DensityOperator::maximally_mixed(3), tol);
    b.row.classical_bound = to_string(ineq.bound);
    b.row.quantum_value = report.lhs;
    b.row.violated = report.violated;
    b.check(close(report.lhs, 4.0 / 3.0, tol.norm) && report.violated, "quantum value != 4/3 or not violated");
    const double spread = max_random_deviation(ineq, all, 4.0 / 3.0, 20, rng, tol);
    b.check(spread <= 1e-8, "state dependence spread " + fmt(spread));
    b.observed << aset.triple_log.size() << " boundary triples; lambda " << (frame.lambda ? fmt(*frame.lambda) : "none")
               << "; lhs " << fmt(report.lhs) << "; random-state spread " << fmt(spread);
  }));

  for (int d = 3; d <= 6; ++d) {
    const double q = std::pow(2.0, d) / d;
    rows.push_back(run_row("hadamard_d" + std::to_string(d), "B0 strong antiset; bound 2; quantum 2^d/d = " + fmt(q),
                           [&](RowBuilder& b) {
      const auto full = hooked(opts, "hadamard", generate_states({Family::hadamard, d, HadamardSubset::full}));
      const auto basis = generate_states({Family::standard_basis, d});
      const auto all = full.merged(basis);
      const auto b0 = labels_where(full, [](const Label& l) { return l.front() == '0'; });
      const auto b1 = labels_where(full, [](const Label& l) { return l.front() == '1'; });
      const auto set0 = verify_strong_antiset(all, b0, basis.labels(), tol);
      const auto set1 = verify_strong_antiset(all, b1, basis.labels(), tol);
      const auto ineq0 = inequality_from_antiset(set0);
      b.check(ineq0.bound == 1, "B0 bound != 1");
      const auto ineq = augment_inequality(ineq0, AddInequality{inequality_from_antiset(set1)});
      b.check(ineq.bound == 2 && ineq.coefficients.size() == full.size(), "augmented bound != 2");
      const auto frame = frame_operator(full, tol.frame);
      b.check(frame.lambda && close(*frame.lambda, q, tol.frame), "frame not (2^d/d) I");
      const auto report = evaluate_inequality(ineq, all, DensityOperator::maximally_mixed(d), tol);
      b.row.classical_bound = to_string(ineq.bound);
      b.row.quantum_value = report.lhs;
      b.row.violated = report.violated;
      b.check(close(report.lhs, q, tol.norm), "quantum value != 2^d/d");
      b.check(report.violated == (d >= 3), "violation flag wrong");
      b.observed << set0.triple_log.size() << " triples; lhs " << fmt(report.lhs);
    }));
  }

  rows.push_back(run_row("mub_d5", "25 states strong antiset over the standard basis; bound 2; quantum 6", [&](RowBuilder& b) {
    const int d = 5;
    const auto states = hooked(opts, "mub", generate_states({Family::mub, d}));
    const auto g = gram(states);
    double worst = 0;
    for (Eigen::Index p = 0; p < g.overlaps.rows(); ++p) {
      for (Eigen::Index q = p + 1; q < g.overlaps.cols(); ++q) {
        const double expected = p / d == q / d ? 0.0 : 1.0 / d;
        worst = std::max(worst, std::abs(g.overlaps(p, q) - expected));
      }
    }
    b.check(worst <= tol.orth, "generator overlaps off by " + fmt(worst));
    const auto principal = labels_where(states, [](const Label& l) { return l.rfind("a1_", 0) == 0; });
    const auto others = labels_where(states, [](const Label& l) { return l.rfind("a1_", 0) != 0; });
    const auto aset = verify_strong_antiset(states, others, principal, tol);
    const auto ineq = augment_inequality(inequality_from_antiset(aset), AddContextNormalization{principal});
    b.check(aset.members.size() == 25 && ineq.bound == 2 && ineq.coefficients.size() == 30, "augmented inequality wrong");
    const auto report = evaluate_inequality(ineq, states, DensityOperator::maximally_mixed(d), tol);
    b.row.classical_bound = to_string(ineq.bound);
    b.row.quantum_value = report.lhs;
    b.row.violated = report.violated;
    b.check(close(report.lhs, 6.0, tol.norm) && report.violated, "quantum value != 6");
    const double spread = max_random_deviation(ineq, states, 6.0, 10, rng, tol);
    b.check(spread <= tol.norm, "random-state deviation " + fmt(spread));
    const bool t4 = triple_antidistinguishable(TripleOverlaps::make(0.25, 0.25, 0.25), tol).antidistinguishable;
    const bool t5 = triple_antidistinguishable(TripleOverlaps::make(0.2, 0.2, 0.2), tol).antidistinguishable;
    const bool t3 =
        triple_antidistinguishable(TripleOverlaps::make(1.0 / 3, 1.0 / 3, 1.0 / 3), tol).antidistinguishable;
    b.check(t4 && t5 && !t3, "triple verdicts (1/4, 1/5, 1/3) wrong");
    b.observed << aset.triple_log.size() << " triples; lhs " << fmt(report.lhs) << "; random-state deviation "
               << fmt(spread);
  }));

  for (int d = 3; d <= 7; ++d) {
    const double q = (d - 1) / 3.0;
    rows.push_back(run_row("maroney_d" + std::to_string(d),
                           "weak antiset; bound 1 given w(c)=1; quantum (d-1)/3 = " + fmt(q) +
                               (d >= 5 ? "; violated" : "; not violated"),
                           [&](RowBuilder& b) {
      const auto states = hooked(opts, "maroney", generate_states({Family::maroney, d}));
      const auto members = labels_where(states, [](const Label& l) { return l != "c"; });
      const auto aset = verify_weak_antiset(states, members, "c", tol);
      const auto ineq = inequality_from_antiset(aset);
      b.check(ineq.bound == 1 && ineq.kind == InequalityKind::state_dependent && ineq.side_constraints.size() == 1 &&
                  ineq.side_constraints.front() == SideConstraint{"c", Rational(1)},
              "inequality wrong");
      const auto report = evaluate_inequality(ineq, states, DensityOperator::pure(states.vector("c")), tol);
      b.row.classical_bound = to_string(ineq.bound);
      b.row.quantum_value = report.lhs;
      b.row.violated = report.violated;
      b.check(close(report.lhs, q, tol.norm), "quantum value != (d-1)/3");
      b.check(report.side_constraints_satisfied && report.violated == (d >= 5), "violation flag wrong");
      b.observed << aset.triple_log.size() << " triples; lhs " << fmt(report.lhs);
    }));
  }

  rows.push_back(run_row("sic_d3", "weak antiset with principal a1; bound 2 given w(a1)=1; quantum 3; violated",
                         [&](RowBuilder& b) {
    const auto states = hooked(opts, "sic", generate_states({Family::sic, 3}));
    const auto g = gram(states);
    double worst = 0;
    for (Eigen::Index p = 0; p < g.overlaps.rows(); ++p) {
      for (Eigen::Index q = p + 1; q < g.overlaps.cols(); ++q) worst = std::max(worst, std::abs(g.overlaps(p, q) - 0.25));
    }
    b.check(worst <= tol.orth, "overlaps off by " + fmt(worst));
    const auto frame = frame_operator(states, tol.frame);
    b.check(frame.lambda && close(*frame.lambda, 3.0, tol.frame), "frame not 3 I");
    const auto members = labels_where(states, [](const Label& l) { return l != "a1"; });
    const auto aset = verify_weak_antiset(states, members, "a1", tol);
    const bool all_boundary = std::all_of(aset.triple_log.begin(), aset.triple_log.end(),
                                          [](const TripleRecord& t) { return t.verdict.boundary; });
    b.check(all_boundary, "triples not on the boundary");
    const auto ineq = augment_inequality(inequality_from_antiset(aset), AddConstrainedOutcome{"a1"});
    b.check(ineq.bound == 2 && ineq.coefficients.size() == 9, "augmented bound != 2");
    const auto report = evaluate_inequality(ineq, states, DensityOperator::pure(states.vector("a1")), tol);
    b.row.classical_bound = to_string(ineq.bound);
    b.row.quantum_value = report.lhs;
    b.row.violated = report.violated;
    b.check(close(report.lhs, 3.0, tol.norm) && report.side_constraints_satisfied && report.violated,
            "quantum value != 3 or side constraint unmet");
    b.observed << aset.triple_log.size() << " boundary triples; lhs " << fmt(report.lhs);
  }));

  rows.push_back(run_row("property_suites",
                         "corollary implies criterion; permutation invariance; classical bound = naive maximum; "
                         "decompositions reconstruct; canonical round trip",
                         [&](RowBuilder& b) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int corollary_counterexamples = 0;
    for (int k = 0; k < 100000; ++k) {
      const auto x = TripleOverlaps::make(unit(rng), unit(rng), unit(rng));
      if (corollary_check(x, tol) && !triple_antidistinguishable(x, tol).antidistinguishable) ++corollary_counterexamples;
    }
    b.check(corollary_counterexamples == 0, "corollary counterexamples");
    int permutation_failures = 0;
    for (int k = 0; k < 10000; ++k) {
      double v[3] = {unit(rng), unit(rng), unit(rng)};
      std::sort(v, v + 3);
      const bool ref = triple_antidistinguishable(TripleOverlaps::make(v[0], v[1], v[2]), tol).antidistinguishable;
      do {
        if (triple_antidistinguishable(TripleOverlaps::make(v[0], v[1], v[2]), tol).antidistinguishable != ref) {
          ++permutation_failures;
        }
      } while (std::next_permutation(v, v + 3));
    }
    b.check(permutation_failures == 0, "permutation dependence");

    int bound_mismatches = 0;
    int reconstruction_failures = 0;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int k = 0; k < 200; ++k) {
      const auto s = random_scenario(rng, 10);
      const auto naive = naive_value_functions(s);
      Coefficients c;
      for (const auto& a : s.outcomes()) c[a] = coeff(rng);
      if (naive.empty()) {
        bound_mismatches += enumerate_value_functions(s, budget).empty() ? 0 : 1;
        continue;
      }
      Rational best;
      bool first = true;
      const auto dense = s.dense(c);
      for (const auto& v : naive) {
        Rational total = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i]) total += dense[i];
        }
        if (first || total > best) best = total;
        first = false;
      }
      if (classical_bound(s, c, budget).bound != best) ++bound_mismatches;

      StateAssignment omega;
      const int picks = std::min<int>(3, static_cast<int>(naive.size()));
      for (int p = 0; p < picks; ++p) {
        const auto& v = naive[std::uniform_int_distribution<std::size_t>(0, naive.size() - 1)(rng)];
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i]) omega[s.outcomes()[i]] += Rational(1, picks);
        }
      }
      const auto m = is_noncontextual_state(s, omega, budget);
      if (m.verdict != Membership::member || reconstruct_state(s, *m.decomposition) != s.dense(omega)) {
        ++reconstruction_failures;
      }
    }
    b.check(bound_mismatches == 0, "classical bound mismatches");
    b.check(reconstruction_failures == 0, "decomposition reconstruction failures");

    int roundtrip_failures = 0;
    for (const char* name : {"classical", "partial_classical", "specker", "antidist_example", "klyachko", "no_state_example"}) {
      const auto bytes = save_scenario(generate_scenario(name, 4));
      if (save_scenario(load_scenario(bytes)) != bytes) ++roundtrip_failures;
    }
    b.check(roundtrip_failures == 0, "round-trip failures");
    b.observed << corollary_counterexamples << " corollary counterexamples / 1e5; " << permutation_failures
               << " permutation failures / 1e4; " << bound_mismatches << " bound mismatches / 200; "
               << reconstruction_failures << " reconstruction failures; " << roundtrip_failures << " round-trip failures";
  }));

  return rows;
}

}  // namespace antictx::cli
