// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Deliberately independent of the `reproduce` command.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace antictx;

namespace {

constexpr double kTol = 1e-9;
constexpr double kSpread = 1e-8;

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << (note.tellp() > 0 ? "; " : "") << what;
    }
  }
};

bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

std::vector<Label> labels_where(const PureStateSet& s, const std::function<bool(const Label&)>& keep) {
  std::vector<Label> out;
  for (const auto& l : s.labels()) {
    if (keep(l)) out.push_back(l);
  }
  return out;
}

double worst_overlap_error(const PureStateSet& s, const std::function<double(Eigen::Index, Eigen::Index)>& expected) {
  const auto g = gram(s);
  double worst = 0;
  for (Eigen::Index p = 0; p < g.overlaps.rows(); ++p) {
    for (Eigen::Index q = p + 1; q < g.overlaps.cols(); ++q) worst = std::max(worst, std::abs(g.overlaps(p, q) - expected(p, q)));
  }
  return worst;
}

Coefficients ones_on(const Scenario& s) {
  Coefficients c;
  for (const auto& a : s.outcomes()) c[a] = 1;
  return c;
}

void criterion1(Check& c) {
  const auto s = specker_triangle();
  c.require(enumerate_value_functions(s).empty(), "value functions exist");
  const auto u = state_uniqueness(s);
  c.require(u.kind == StateUniqueness::unique && u.point == std::vector<Rational>(3, Rational(1, 2)),
            "state is not uniquely (1/2,1/2,1/2)");
}

void criterion2(Check& c) {
  const auto s = no_state_example();
  c.require(s.size() == 6, "wrong outcome count");
  c.require(state_optimize(s, ones_on(s)).status == LPStatus::infeasible, "state polytope not empty");
}

void criterion3(Check& c) {
  const auto s = klyachko_scenario();
  const auto cb = classical_bound(s, ones_on(s));
  c.require(cb.bound == 2, "classical bound " + to_string(cb.bound));
  c.require(cb.value_function_count == 11 && testing_support::naive_value_functions(s).size() == 11,
            "value function count");
  const auto opt = state_optimize(s, ones_on(s));
  c.require(opt.status == LPStatus::optimal && opt.value == Rational(5, 2), "state maximum != 5/2");
  StateAssignment half;
  for (const auto& a : s.outcomes()) half[a] = Rational(1, 2);
  c.require(is_noncontextual_state(s, half).verdict == Membership::not_member, "w = 1/2 accepted");
}

void criterion4(Check& c) {
  const auto generated = scenario_from_states(generate_states({Family::caves_example}), kTol);
  c.require(generated == antidist_example(), "generated scenario differs");
  c.require(definite_intersection(generated, {"a1", "a2", "a3"}).empty(), "definite value function exists");
  const auto r = scenario_antidistinguishable(generated, {"a1", "a2", "a3"});
  c.require(r.antidistinguishable && r.witness && r.witness->context == LabelSet{"a1_perp", "a2_perp", "a3_perp"},
            "wrong antidistinguishability witness");
}

void criterion5(Check& c) {
  const auto rays = generate_states({Family::yu_oh_rays});
  const auto principal = generate_states({Family::yu_oh_principal});
  const auto all = rays.merged(principal);
  const auto aset = verify_strong_antiset(all, rays.labels(), principal.labels());
  c.require(aset.triple_log.size() == 18, "triple count");
  for (const auto& t : aset.triple_log) {
    c.require(t.verdict.antidistinguishable && near(t.verdict.margin_quadratic, 0), "triple off the boundary");
  }
  const auto ineq = inequality_from_antiset(aset);
  c.require(ineq.bound == 1, "bound != 1");
  const auto f = frame_operator(rays, kTol);
  c.require(f.lambda && near(*f.lambda, 4.0 / 3), "frame not (4/3) I");
  c.require(near(evaluate_inequality(ineq, all, DensityOperator::maximally_mixed(3)).lhs, 4.0 / 3), "value at I/3");
  std::mt19937_64 rng(11);
  double lo = 1e9, hi = -1e9;
  for (int k = 0; k < 20; ++k) {
    const double v = evaluate_inequality(ineq, all, DensityOperator::random(3, rng)).lhs;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  c.require(near(lo, 4.0 / 3) && hi - lo <= kSpread, "random-state spread");
}

void criterion6(Check& c) {
  for (int d = 3; d <= 6; ++d) {
    const auto full = generate_states({Family::hadamard, d, HadamardSubset::full});
    const auto basis = generate_states({Family::standard_basis, d});
    const auto all = full.merged(basis);
    const auto b0 = labels_where(full, [](const Label& l) { return l.front() == '0'; });
    const auto b1 = labels_where(full, [](const Label& l) { return l.front() == '1'; });
    const auto i0 = inequality_from_antiset(verify_strong_antiset(all, b0, basis.labels()));
    const auto i1 = inequality_from_antiset(verify_strong_antiset(all, b1, basis.labels()));
    c.require(i0.bound == 1, "B0 bound");
    const auto sum = augment_inequality(i0, AddInequality{i1});
    c.require(sum.bound == 2, "augmented bound");
    const auto r = evaluate_inequality(sum, all, DensityOperator::maximally_mixed(d));
    c.require(near(r.lhs, std::pow(2.0, d) / d), "value at d=" + std::to_string(d));
    c.require(r.violated == (d >= 3), "violation flag at d=" + std::to_string(d));
  }
}

void criterion7(Check& c) {
  const int d = 5;
  const auto mub = generate_states({Family::mub, d});
  c.require(worst_overlap_error(mub, [](Eigen::Index p, Eigen::Index q) { return p / 5 == q / 5 ? 0.0 : 0.2; }) <= kTol,
            "generator overlaps");
  const auto principal = labels_where(mub, [](const Label& l) { return l.rfind("a1_", 0) == 0; });
  const auto others = labels_where(mub, [](const Label& l) { return l.rfind("a1_", 0) != 0; });
  const auto aset = verify_strong_antiset(mub, others, principal);
  c.require(aset.members.size() == 25, "antiset size");
  const auto ineq = augment_inequality(inequality_from_antiset(aset), AddContextNormalization{principal});
  c.require(ineq.bound == 2, "augmented bound");
  std::mt19937_64 rng(12);
  for (int k = 0; k < 10; ++k) {
    c.require(near(evaluate_inequality(ineq, mub, DensityOperator::random(d, rng)).lhs, 6.0), "value != 6");
  }
  c.require(triple_antidistinguishable(TripleOverlaps::make(0.25, 0.25, 0.25)).antidistinguishable, "(1/4)^3 rejected");
  c.require(triple_antidistinguishable(TripleOverlaps::make(0.2, 0.2, 0.2)).antidistinguishable, "(1/5)^3 rejected");
  c.require(!triple_antidistinguishable(TripleOverlaps::make(1.0 / 3, 1.0 / 3, 1.0 / 3)).antidistinguishable,
            "(1/3)^3 accepted");
}

void criterion8(Check& c) {
  for (int d = 5; d <= 7; ++d) {
    const auto m = generate_states({Family::maroney, d});
    const auto ineq = inequality_from_antiset(verify_weak_antiset(m, labels_where(m, [](const Label& l) { return l != "c"; }), "c"));
    c.require(ineq.kind == InequalityKind::state_dependent && ineq.side_constraints.size() == 1 &&
                  ineq.side_constraints.front() == SideConstraint{"c", 1},
              "side constraint");
    const auto r = evaluate_inequality(ineq, m, DensityOperator::pure(Vector::Unit(d, 0).cast<Complex>()));
    c.require(near(r.lhs, (d - 1) / 3.0), "value at d=" + std::to_string(d));
    c.require(r.violated == (d >= 5), "violation flag at d=" + std::to_string(d));
  }
}

void criterion9(Check& c) {
  const auto sic = generate_states({Family::sic, 3});
  c.require(worst_overlap_error(sic, [](Eigen::Index, Eigen::Index) { return 0.25; }) <= kTol, "overlaps");
  const auto f = frame_operator(sic, kTol);
  c.require(f.lambda && near(*f.lambda, 3.0) && (f.frame - 3.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= kTol,
            "frame != 3I");
  const auto aset = verify_weak_antiset(sic, labels_where(sic, [](const Label& l) { return l != "a1"; }), "a1");
  c.require(std::all_of(aset.triple_log.begin(), aset.triple_log.end(), [](const TripleRecord& t) { return t.verdict.boundary; }),
            "non-boundary triple");
  const auto ineq = augment_inequality(inequality_from_antiset(aset), AddConstrainedOutcome{"a1"});
  c.require(ineq.bound == 2, "augmented bound");
  const auto r = evaluate_inequality(ineq, sic, DensityOperator::pure(sic.vector("a1")));
  c.require(near(r.lhs, 3.0) && r.side_constraints_satisfied, "value != 3 or side constraint unmet");
}

void criterion10(Check& c) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int cor_bad = 0;
  for (int k = 0; k < 100000; ++k) {
    const auto x = TripleOverlaps::make(u(rng) * (k % 2 ? 1.0 : 0.25), u(rng) * (k % 2 ? 1.0 : 0.25), u(rng) * (k % 2 ? 1.0 : 0.25));
    if (corollary_check(x) && !triple_antidistinguishable(x).antidistinguishable) ++cor_bad;
  }
  c.require(cor_bad == 0, "(a) " + std::to_string(cor_bad) + " counterexamples");

  int bound_bad = 0, recon_bad = 0;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const auto s = testing_support::random_scenario(rng, 10);
    const auto naive = testing_support::naive_value_functions(s);
    if (naive.empty()) continue;
    Coefficients cs;
    for (const auto& a : s.outcomes()) cs[a] = coef(rng);
    const auto dense = s.dense(cs);
    Rational best = 0;
    for (std::size_t i = 0; i < naive.size(); ++i) {
      Rational t = 0;
      for (std::size_t j = 0; j < dense.size(); ++j) t += naive[i][j] ? dense[j] : Rational(0);
      if (i == 0 || t > best) best = t;
    }
    if (classical_bound(s, cs).bound != best) ++bound_bad;

    const auto vfs = enumerate_value_functions(s);
    StateAssignment omega;
    for (int p = 0; p < 3; ++p) {
      for (const auto& a : vfs[(k * 7 + p * 13) % vfs.size()].ones(s)) omega[a] += Rational(1, 3);
    }
    const auto m = is_noncontextual_state(s, omega);
    if (m.verdict != Membership::member || reconstruct_state(s, *m.decomposition) != s.dense(omega)) ++recon_bad;
  }
  c.require(bound_bad == 0, "(b) " + std::to_string(bound_bad) + " bound mismatches");
  c.require(recon_bad == 0, "(c) " + std::to_string(recon_bad) + " reconstruction failures");

  for (const char* name : {"specker.json", "antidist_example.json", "klyachko.json", "no_state.json", "classical3.json"}) {
    const auto text = testing_support::read_fixture(name);
    c.require(save_scenario(load_scenario(text)) == text, std::string("(d) ") + name);
  }
  for (const char* name : {"caves_vectors.json", "yu_oh_13.json"}) {
    const auto text = testing_support::read_fixture(name);
    c.require(save_states(load_states(text)) == text, std::string("(d) ") + name);
  }

  int perm_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    double v[3] = {u(rng) * 0.6, u(rng) * 0.6, u(rng) * 0.6};
    std::sort(v, v + 3);
    const bool ref = triple_antidistinguishable(TripleOverlaps::make(v[0], v[1], v[2])).antidistinguishable;
    do {
      if (triple_antidistinguishable(TripleOverlaps::make(v[0], v[1], v[2])).antidistinguishable != ref) ++perm_bad;
    } while (std::next_permutation(v, v + 3));
  }
  c.require(perm_bad == 0, "(e) " + std::to_string(perm_bad) + " permutation disagreements");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Specker triangle: no value functions, unique state (1/2,1/2,1/2)", criterion1},
      {"no-state scenario: state polytope infeasible", criterion2},
      {"Klyachko: bound 2, 11 value functions, state max 5/2, w=1/2 rejected", criterion3},
      {"generated scenario of the six vectors, empty definite set, witness", criterion4},
      {"Yu-Oh: 18 boundary triples, bound 1, lambda 4/3, value 4/3", criterion5},
      {"Hadamard d=3..6: bounds 1 and 2, value 2^d/d", criterion6},
      {"MUB d=5: overlaps, 25-element antiset, bound 2, value 6", criterion7},
      {"Maroney d=5..7: weak antiset, w(c)=1, value (d-1)/3", criterion8},
      {"SIC d=3: overlaps 1/4, frame 3I, bound 2, value 3", criterion9},
      {"property suites (a)-(e)", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!c.ok) std::cout << " [" << c.note.str() << "]";
    std::cout << "\n";
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
