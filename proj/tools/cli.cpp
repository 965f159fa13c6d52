#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "antictx/antictx.hpp"

namespace antictx::cli {
namespace {

using nlohmann::json;

constexpr const char* kSynopsis = R"(usage: antictx [--tolerance EPS] [--format json|text] [--node-budget N] COMMAND ...

commands:
  validate SCENARIO
  value-functions SCENARIO [--count-only]
  classical-bound SCENARIO --coeffs FILE|ones
  state-bound SCENARIO --coeffs FILE|ones
  membership SCENARIO --state FILE
  quantum-scenario VECTORS [--tol EPS]
  check-anti --overlaps x1,x2,x3
  check-anti --vectors VECTORS --triple a,b,c
  check-anti --certificate FILE
  check-anti --scenario SCENARIO --set a,b,...
  antiset verify VECTORS --members a,b,...|all --principal p,... [--kind strong|weak] [--emit]
  antiset find VECTORS --members a,b,...|all --principal p,...
  inequality emit VECTORS --members ... --principal ... [--kind strong|weak]
  inequality augment INEQUALITY (--add FILE | --normalize a,b,... | --constrained LABEL)
  inequality evaluate INEQUALITY --vectors VECTORS --rho mixed|pure:LABEL|FILE
  generate FAMILY [--d N] [--subset B0|B1|full] [--n N]
  reproduce

Files may be given as '-' to read standard input.
)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = kSuccess;
  json doc;
  std::string text;
  // Canonical file text emitted verbatim in JSON mode instead of `doc`.
  std::optional<std::string> canonical;
};

struct Globals {
  double tolerance = 1e-9;
  std::string format = "json";
  std::uint64_t node_budget = 100'000'000;

  [[nodiscard]] Tolerances tol() const { return Tolerances::uniform(tolerance); }
  [[nodiscard]] EnumerationOptions budget() const { return {node_budget}; }
};

// Same rendering in both output modes, so text and JSON agree digit for digit.
std::string num(double x) { return json(x).dump(); }

std::string braces(const std::vector<Label>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
  return out + "}";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) throw UsageError("empty item in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return detail::read_all(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return detail::read_all(f);
}

double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not a number: '" + text + "'");
  return x;
}

// Coefficients: "ones", {"coefficients": {...}} or a bare label -> rational map.
Coefficients load_coefficients(const std::string& path, std::istream& in, const std::vector<Label>& outcomes) {
  Coefficients c;
  if (path == "ones") {
    for (const auto& a : outcomes) c[a] = 1;
    return c;
  }
  const auto doc = detail::parse_json_text(slurp(path, in));
  if (doc.is_object() && doc.contains("coefficients")) return parse_coefficient_map(doc.at("coefficients"));
  return parse_coefficient_map(doc);
}

StateAssignment load_state(const std::string& path, std::istream& in) {
  const auto doc = detail::parse_json_text(slurp(path, in));
  const auto& map = doc.is_object() && doc.contains("state") ? doc.at("state") : doc;
  return parse_coefficient_map(map);
}

json verdict_json(const AntidistVerdict& v) {
  return {{"antidistinguishable", v.antidistinguishable},
          {"via", to_string(v.via)},
          {"margin_strict", v.margin_strict},
          {"margin_quadratic", v.margin_quadratic},
          {"boundary", v.boundary}};
}

std::string verdict_text(const AntidistVerdict& v) {
  std::ostringstream os;
  os << (v.antidistinguishable ? "antidistinguishable" : "not antidistinguishable") << " (" << to_string(v.via)
     << ")\nmargin_strict " << num(v.margin_strict) << "\nmargin_quadratic " << num(v.margin_quadratic)
     << "\nboundary " << (v.boundary ? "yes" : "no") << "\n";
  return os.str();
}

json triple_json(const TripleRecord& t) {
  return {{"triple", {t.a, t.b, t.c}}, {"verdict", verdict_json(t.verdict)}};
}

std::string inequality_text(const NoncontextualityInequality& ineq) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, c] : ineq.coefficients) {
    os << (first ? "" : " + ") << (c == 1 ? "" : to_string(c) + " ") << "w(" << label << ")";
    first = false;
  }
  os << " <= " << to_string(ineq.bound) << "\nkind " << to_string(ineq.kind) << "\n";
  for (const auto& sc : ineq.side_constraints) os << "given w(" << sc.label << ") = " << to_string(sc.value) << "\n";
  if (!ineq.provenance.empty()) os << "provenance " << ineq.provenance << "\n";
  return os.str();
}

std::vector<Label> resolve_members(const std::vector<std::string>& members, const PureStateSet& states,
                                   const std::vector<Label>& principal) {
  if (members.size() == 1 && members.front() == "all") {
    std::vector<Label> out;
    for (const auto& l : states.labels()) {
      if (std::find(principal.begin(), principal.end(), l) == principal.end()) out.push_back(l);
    }
    return out;
  }
  return members;
}

PairwiseAntiset verify_antiset(const PureStateSet& states, const std::vector<Label>& members,
                               const std::vector<Label>& principal, const std::string& kind, const Tolerances& tol) {
  if (kind == "weak") {
    if (principal.size() != 1) throw UsageError("a weak antiset takes exactly one principal outcome");
    return verify_weak_antiset(states, members, principal.front(), tol);
  }
  return verify_strong_antiset(states, members, principal, tol);
}

Outcome failed_triple(const FailedTripleError& e) {
  Outcome o;
  o.code = kNegative;
  o.doc = {{"verified", false}, {"failed", triple_json(e.record())}};
  o.text = std::string("not verified: ") + e.what() + "\n";
  return o;
}

DensityOperator load_rho(const std::string& spec, const PureStateSet& states, std::istream& in, const Tolerances& tol) {
  if (spec == "mixed") return DensityOperator::maximally_mixed(states.dimension());
  if (spec.rfind("pure:", 0) == 0) return DensityOperator::pure(states.vector(spec.substr(5)));
  return parse_density_operator(detail::parse_json_text(slurp(spec, in)), tol.norm);
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_validate(const std::string& path, std::istream& in) {
  const auto report = validate_scenario(parse_scenario_candidate(slurp(path, in)));
  auto findings = [](const std::vector<Finding>& fs) {
    json arr = json::array();
    for (const auto& f : fs) arr.push_back({{"rule", f.rule}, {"sets", f.sets}});
    return arr;
  };
  Outcome o;
  o.code = report.valid ? kSuccess : kNegative;
  o.doc["valid"] = report.valid;
  o.doc["violations"] = findings(report.violations);
  o.doc["warnings"] = findings(report.warnings);
  std::ostringstream os;
  os << (report.valid ? "valid" : "invalid") << "\n";
  for (const auto& f : report.violations) os << "violation " << f.rule << " " << json(f.sets).dump() << "\n";
  for (const auto& f : report.warnings) os << "warning " << f.rule << " " << json(f.sets).dump() << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_value_functions(const Scenario& s, bool count_only, const Globals& g) {
  Outcome o;
  std::size_t count = 0;
  json list = json::array();
  std::ostringstream lines;
  for_each_value_function(
      s,
      [&](const ValueFunction& v) {
        ++count;
        if (count_only) return;
        list.push_back(v.ones(s));
        lines << braces(v.ones(s)) << "\n";
      },
      g.budget());
  o.doc = {{"count", count}};
  if (!count_only) o.doc["value_functions"] = list;
  o.text = "count " + std::to_string(count) + "\n" + lines.str();
  return o;
}

Outcome cmd_classical_bound(const Scenario& s, const Coefficients& c, const Globals& g) {
  Outcome o;
  try {
    const auto r = classical_bound(s, c, g.budget());
    o.doc = {{"bound", to_string(r.bound)},
             {"maximizer", r.maximizer.ones(s)},
             {"value_function_count", r.value_function_count}};
    o.text = "bound " + to_string(r.bound) + "\nmaximizer " + braces(r.maximizer.ones(s)) + "\nvalue functions " +
             std::to_string(r.value_function_count) + "\n";
  } catch (const EmptyPolytopeError& e) {
    o.code = kNegative;
    o.doc = {{"bound", nullptr}, {"status", "empty-polytope"}, {"value_function_count", 0}};
    o.text = "no value functions; classical bound undefined\n";
  }
  return o;
}

Outcome cmd_state_bound(const Scenario& s, const Coefficients& c) {
  const auto r = state_optimize(s, c);
  Outcome o;
  o.doc = {{"status", to_string(r.status)}};
  o.text = "status " + std::string(to_string(r.status)) + "\n";
  if (r.status != LPStatus::optimal) {
    o.code = kNegative;
    return o;
  }
  json point = json::object();
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    point[s.outcomes()[i]] = to_string(r.point[i]);
    os << "  " << s.outcomes()[i] << " " << to_string(r.point[i]) << "\n";
  }
  o.doc["value"] = to_string(r.value);
  o.doc["point"] = point;
  o.text += "value " + to_string(r.value) + "\npoint\n" + os.str();
  return o;
}

Outcome cmd_membership(const Scenario& s, const StateAssignment& omega, const Globals& g) {
  const auto r = is_noncontextual_state(s, omega, g.budget());
  Outcome o;
  const char* verdict = r.verdict == Membership::member       ? "member"
                        : r.verdict == Membership::not_member ? "not-member"
                                                              : "empty-polytope";
  o.code = r.verdict == Membership::member ? kSuccess : kNegative;
  o.doc = {{"verdict", verdict}};
  o.text = std::string(verdict) + "\n";
  if (r.decomposition) {
    json parts = json::array();
    for (const auto& [v, p] : r.decomposition->weights) {
      parts.push_back({{"value_function", v.ones(s)}, {"weight", to_string(p)}});
      o.text += "  " + to_string(p) + " " + braces(v.ones(s)) + "\n";
    }
    o.doc["decomposition"] = parts;
  }
  return o;
}

Outcome cmd_quantum_scenario(const PureStateSet& states, double eps) {
  const auto s = scenario_from_states(states, eps);
  Outcome o;
  o.canonical = save_scenario(s);
  o.doc = json::parse(*o.canonical);
  std::ostringstream os;
  os << s.size() << " outcomes, " << s.contexts().size() << " contexts, " << s.partial_contexts().size()
     << " partial contexts\n";
  for (const auto& m : s.contexts()) os << "context " << braces(m) << "\n";
  for (const auto& n : s.partial_contexts()) os << "partial " << braces(n) << "\n";
  o.text = os.str();
  return o;
}

Outcome verdict_outcome(const AntidistVerdict& v, const TripleOverlaps& x, const Tolerances& tol) {
  Outcome o;
  o.code = v.antidistinguishable ? kSuccess : kNegative;
  o.doc = verdict_json(v);
  o.doc["overlaps"] = {x.x1, x.x2, x.x3};
  o.doc["corollary"] = corollary_check(x, tol);
  o.text = verdict_text(v) + "overlaps " + num(x.x1) + " " + num(x.x2) + " " + num(x.x3) + "\ncorollary " +
           (corollary_check(x, tol) ? "yes" : "no") + "\n";
  return o;
}

Outcome cmd_certificate(const std::string& path, std::istream& in, const Tolerances& tol) {
  const auto [states, cert] = parse_certificate(detail::parse_json_text(slurp(path, in)), tol.norm);
  const auto r = verify_certificate(states, cert, tol);
  Outcome o;
  o.code = r.valid ? kSuccess : kNegative;
  o.doc = {{"antidistinguishable", r.valid},
           {"via", to_string(Via::certificate)},
           {"orthonormality_residual", r.orthonormality_residual},
           {"paired_residual", r.paired_residual},
           {"span_residual", r.span_residual}};
  o.text = std::string(r.valid ? "antidistinguishable" : "not antidistinguishable") + " (certificate)\n" +
           "orthonormality_residual " + num(r.orthonormality_residual) + "\npaired_residual " +
           num(r.paired_residual) + "\nspan_residual " + num(r.span_residual) + "\n";
  return o;
}

Outcome cmd_scenario_anti(const Scenario& s, const std::vector<Label>& targets) {
  const auto r = scenario_antidistinguishable(s, targets);
  Outcome o;
  o.code = r.antidistinguishable ? kSuccess : kNegative;
  o.doc = {{"antidistinguishable", r.antidistinguishable}, {"via", to_string(r.via)}};
  o.text = std::string(r.antidistinguishable ? "antidistinguishable" : "not antidistinguishable") + " (combinatorial)\n";
  if (r.witness) {
    json pairs = json::object();
    for (std::size_t j = 0; j < r.witness->targets.size(); ++j) pairs[r.witness->targets[j]] = r.witness->perps[j];
    o.doc["witness"] = {{"context", r.witness->context}, {"perp", pairs}};
    o.text += "context " + braces(r.witness->context) + "\n";
    for (std::size_t j = 0; j < r.witness->targets.size(); ++j) {
      o.text += "  " + r.witness->targets[j] + " -> " + r.witness->perps[j] + "\n";
    }
  }
  return o;
}

Outcome antiset_outcome(const PairwiseAntiset& a, bool emit) {
  Outcome o;
  json log = json::array();
  for (const auto& t : a.triple_log) log.push_back(triple_json(t));
  o.doc = {{"verified", true},
           {"kind", to_string(a.kind)},
           {"members", a.members},
           {"principal", a.principal},
           {"triples", log}};
  std::ostringstream os;
  os << "verified " << to_string(a.kind) << " antiset " << braces(a.members) << " principal " << braces(a.principal)
     << "\n" << a.triple_log.size() << " triples\n";
  for (const auto& t : a.triple_log) {
    os << "  " << t.a << " " << t.b << " " << t.c << " margin_strict " << num(t.verdict.margin_strict)
       << " margin_quadratic " << num(t.verdict.margin_quadratic) << (t.verdict.boundary ? " boundary" : "") << "\n";
  }
  if (emit) {
    const auto ineq = inequality_from_antiset(a);
    o.doc["inequality"] = inequality_to_json(ineq);
    os << inequality_text(ineq);
  }
  o.text = os.str();
  return o;
}

Outcome cmd_antiset_find(const PureStateSet& states, const std::vector<Label>& pool, const std::vector<Label>& principal,
                         const Tolerances& tol) {
  const auto found = find_strong_antisets(states, pool, principal, tol);
  Outcome o;
  json list = json::array();
  std::ostringstream os;
  os << found.size() << " maximal strong antisets\n";
  for (const auto& a : found) {
    list.push_back({{"members", a.members}, {"size", a.members.size()}});
    os << "  " << braces(a.members) << "\n";
  }
  o.doc = {{"principal", principal}, {"antisets", list}};
  o.code = found.empty() ? kNegative : kSuccess;
  o.text = os.str();
  return o;
}

Outcome inequality_outcome(const NoncontextualityInequality& ineq) {
  return {kSuccess, inequality_to_json(ineq), inequality_text(ineq)};
}

Outcome cmd_evaluate(const NoncontextualityInequality& ineq, const PureStateSet& states, const DensityOperator& rho,
                     const Tolerances& tol) {
  const auto r = evaluate_inequality(ineq, states, rho, tol);
  Outcome o;
  o.code = r.violated ? kSuccess : kNegative;
  o.doc = {{"lhs", r.lhs},
           {"bound", to_string(r.bound)},
           {"margin", r.margin},
           {"violated", r.violated},
           {"side_constraints_satisfied", r.side_constraints_satisfied}};
  o.text = "lhs " + num(r.lhs) + "\nbound " + to_string(r.bound) + "\nmargin " + num(r.margin) + "\nviolated " +
           (r.violated ? "yes" : "no") + "\nside constraints " + (r.side_constraints_satisfied ? "satisfied" : "unmet") +
           "\n";
  return o;
}

Outcome cmd_generate(const std::string& name, int d, const std::string& subset, int n) {
  Outcome o;
  if (const auto family = family_from_name(name)) {
    const auto sub = subset_from_name(subset);
    if (!sub) throw UsageError("unknown subset '" + subset + "'");
    const auto states = generate_states({*family, d, *sub});
    o.doc = states_to_json(states);
    o.canonical = save_states(states);
    std::ostringstream os;
    os << "dimension " << states.dimension() << "\n";
    for (const auto& s : states.states()) {
      os << s.label;
      for (Eigen::Index k = 0; k < s.vector.size(); ++k) {
        os << " (" << num(s.vector(k).real()) << "," << num(s.vector(k).imag()) << ")";
      }
      os << "\n";
    }
    o.text = os.str();
    return o;
  }
  const auto s = generate_scenario(name, n);
  o.canonical = save_scenario(s);
  o.doc = json::parse(*o.canonical);
  o.text = *o.canonical;
  return o;
}

Outcome cmd_reproduce(const Globals& g, std::ostream& err) {
  ReproduceOptions opts;
  opts.tol = g.tol();
  opts.node_budget = g.node_budget;
  const auto rows = reproduce(opts);
  Outcome o;
  o.doc = json::array();
  std::ostringstream os;
  os << std::left << std::setw(18) << "example" << std::setw(11) << "classical" << std::setw(24) << "quantum"
     << std::setw(10) << "violated" << "result\n";
  const ReproduceRow* first_failure = nullptr;
  for (const auto& r : rows) {
    json row = {{"example", r.example},
                {"classical_bound", r.classical_bound ? json(*r.classical_bound) : json(nullptr)},
                {"quantum_value", r.quantum_value ? json(*r.quantum_value) : json(nullptr)},
                {"violated", r.violated ? json(*r.violated) : json(nullptr)},
                {"expected", r.expected},
                {"observed", r.observed},
                {"pass", r.pass}};
    o.doc.push_back(row);
    os << std::setw(18) << r.example << std::setw(11) << r.classical_bound.value_or("-") << std::setw(24)
       << (r.quantum_value ? num(*r.quantum_value) : "-") << std::setw(10)
       << (r.violated ? (*r.violated ? "yes" : "no") : "-") << (r.pass ? "PASS" : "FAIL") << "\n"
       << "    expected: " << r.expected << "\n"
       << "    observed: " << r.observed << "\n";
    if (!r.pass && !first_failure) first_failure = &r;
  }
  o.text = os.str();
  if (first_failure) {
    o.code = kNegative;
    err << "reproduce: row '" << first_failure->example << "' failed: " << first_failure->observed << "\n";
  }
  return o;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality scenarios, antidistinguishability and pairwise-antiset inequalities", "antictx"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tolerance", g.tolerance, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--node-budget", g.node_budget, "search node limit");

  auto sub = [](CLI::App& parent, const char* name, const char* desc) {
    auto* s = parent.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  std::string path;
  std::string second;
  std::string coeffs;
  bool count_only = false;
  bool emit = false;
  std::string members;
  std::string principal;
  std::string kind = "strong";
  std::string overlaps, vectors, triple, certificate, scenario_path, set;
  std::string add, normalize, constrained, rho;
  std::optional<double> local_tol;
  int d = 3;
  int n = 3;
  std::string subset = "full";

  auto* validate = sub(app, "validate", "check a scenario document");
  validate->add_option("scenario", path)->required();

  auto* vfs = sub(app, "value-functions", "enumerate value functions");
  vfs->add_option("scenario", path)->required();
  vfs->add_flag("--count-only", count_only);

  auto* cbound = sub(app, "classical-bound", "maximum over value functions");
  cbound->add_option("scenario", path)->required();
  cbound->add_option("--coeffs", coeffs)->required();

  auto* sbound = sub(app, "state-bound", "maximum over the state polytope");
  sbound->add_option("scenario", path)->required();
  sbound->add_option("--coeffs", coeffs)->required();

  auto* member = sub(app, "membership", "decide KS-noncontextuality of a state");
  member->add_option("scenario", path)->required();
  member->add_option("--state", second)->required();

  auto* qscen = sub(app, "quantum-scenario", "scenario generated by a vector set");
  qscen->add_option("vectors", path)->required();
  qscen->add_option("--tol", local_tol)->check(CLI::PositiveNumber);

  auto* anti = sub(app, "check-anti", "antidistinguishability checks");
  anti->add_option("--overlaps", overlaps);
  anti->add_option("--vectors", vectors);
  anti->add_option("--triple", triple);
  anti->add_option("--certificate", certificate);
  anti->add_option("--scenario", scenario_path);
  anti->add_option("--set", set);

  auto* antiset = sub(app, "antiset", "pairwise antisets");
  antiset->require_subcommand(1);
  auto* av = sub(*antiset, "verify", "verify a pairwise antiset");
  auto* af = sub(*antiset, "find", "maximal strong antisets in a pool");
  for (auto* s : {av, af}) {
    s->add_option("vectors", path)->required();
    s->add_option("--members", members)->required();
    s->add_option("--principal", principal)->required();
  }
  av->add_option("--kind", kind)->check(CLI::IsMember({"strong", "weak"}));
  av->add_flag("--emit", emit);

  auto* ineq = sub(app, "inequality", "noncontextuality inequalities");
  ineq->require_subcommand(1);
  auto* ie = sub(*ineq, "emit", "inequality of a verified antiset");
  ie->add_option("vectors", path)->required();
  ie->add_option("--members", members)->required();
  ie->add_option("--principal", principal)->required();
  ie->add_option("--kind", kind)->check(CLI::IsMember({"strong", "weak"}));
  auto* ia = sub(*ineq, "augment", "augment an inequality");
  ia->add_option("inequality", path)->required();
  auto* add_opt = ia->add_option("--add", add);
  auto* norm_opt = ia->add_option("--normalize", normalize);
  auto* cons_opt = ia->add_option("--constrained", constrained);
  add_opt->excludes(norm_opt)->excludes(cons_opt);
  norm_opt->excludes(cons_opt);
  auto* iv = sub(*ineq, "evaluate", "quantum value of an inequality");
  iv->add_option("inequality", path)->required();
  iv->add_option("--vectors", vectors)->required();
  iv->add_option("--rho", rho)->required();

  auto* gen = sub(app, "generate", "built-in state families and scenarios");
  gen->add_option("family", path)->required();
  gen->add_option("--d", d);
  gen->add_option("--subset", subset);
  gen->add_option("--n", n);

  auto* repro = sub(app, "reproduce", "recompute every worked example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kSynopsis;
    return kUsage;
  }

  Outcome o;
  try {
    const auto tol = g.tol();
    auto load_scen = [&](const std::string& p) { return load_scenario(slurp(p, in)); };
    auto load_vecs = [&](const std::string& p) { return load_states(slurp(p, in), tol.norm); };

    if (validate->parsed()) {
      o = cmd_validate(path, in);
    } else if (vfs->parsed()) {
      o = cmd_value_functions(load_scen(path), count_only, g);
    } else if (cbound->parsed()) {
      const auto s = load_scen(path);
      o = cmd_classical_bound(s, load_coefficients(coeffs, in, s.outcomes()), g);
    } else if (sbound->parsed()) {
      const auto s = load_scen(path);
      o = cmd_state_bound(s, load_coefficients(coeffs, in, s.outcomes()));
    } else if (member->parsed()) {
      const auto s = load_scen(path);
      o = cmd_membership(s, load_state(second, in), g);
    } else if (qscen->parsed()) {
      o = cmd_quantum_scenario(load_vecs(path), local_tol.value_or(g.tolerance));
    } else if (anti->parsed()) {
      const int modes = !overlaps.empty() + !vectors.empty() + !certificate.empty() + !scenario_path.empty();
      if (modes != 1) throw UsageError("check-anti takes exactly one of --overlaps, --vectors, --certificate, --scenario");
      if (!overlaps.empty()) {
        const auto parts = split_list(overlaps);
        if (parts.size() != 3) throw UsageError("--overlaps takes three values");
        const auto x = TripleOverlaps::make(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), tol.norm);
        o = verdict_outcome(triple_antidistinguishable(x, tol), x, tol);
      } else if (!vectors.empty()) {
        if (triple.empty()) throw UsageError("--vectors needs --triple a,b,c");
        const auto labels = split_list(triple);
        if (labels.size() != 3) throw UsageError("--triple takes three labels");
        const auto states = load_vecs(vectors);
        const auto x = TripleOverlaps::of(states.vector(labels[0]), states.vector(labels[1]), states.vector(labels[2]),
                                          tol.norm);
        o = verdict_outcome(triple_antidistinguishable(x, tol), x, tol);
      } else if (!certificate.empty()) {
        o = cmd_certificate(certificate, in, tol);
      } else {
        if (set.empty()) throw UsageError("--scenario needs --set a,b,...");
        o = cmd_scenario_anti(load_scen(scenario_path), split_list(set));
      }
    } else if (av->parsed() || af->parsed() || ie->parsed()) {
      const auto states = load_vecs(path);
      const auto p = split_list(principal);
      const auto w = resolve_members(split_list(members), states, p);
      try {
        if (af->parsed()) {
          o = cmd_antiset_find(states, w, p, tol);
        } else if (av->parsed()) {
          o = antiset_outcome(verify_antiset(states, w, p, kind, tol), emit);
        } else {
          o = inequality_outcome(inequality_from_antiset(verify_antiset(states, w, p, kind, tol)));
        }
      } catch (const FailedTripleError& e) {
        o = failed_triple(e);
      }
    } else if (ia->parsed()) {
      const auto base = parse_inequality(detail::parse_json_text(slurp(path, in)));
      if (!add.empty()) {
        o = inequality_outcome(
            augment_inequality(base, AddInequality{parse_inequality(detail::parse_json_text(slurp(add, in)))}));
      } else if (!normalize.empty()) {
        o = inequality_outcome(augment_inequality(base, AddContextNormalization{split_list(normalize)}));
      } else if (!constrained.empty()) {
        o = inequality_outcome(augment_inequality(base, AddConstrainedOutcome{constrained}));
      } else {
        throw UsageError("augment needs one of --add, --normalize, --constrained");
      }
    } else if (iv->parsed()) {
      const auto inequality = parse_inequality(detail::parse_json_text(slurp(path, in)));
      const auto states = load_vecs(vectors);
      o = cmd_evaluate(inequality, states, load_rho(rho, states, in, tol), tol);
    } else if (gen->parsed()) {
      o = cmd_generate(path, d, subset, n);
    } else if (repro->parsed()) {
      o = cmd_reproduce(g, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kSynopsis;
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const EmptyPolytopeError& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (g.format == "json") {
    out << (o.canonical ? *o.canonical : o.doc.dump(2) + "\n");
  } else {
    out << o.text;
  }
  out.flush();
  return o.code;
}

}  // namespace antictx::cli
