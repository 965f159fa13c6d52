#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace antictx;
using nlohmann::json;
using testing_support::fixture;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  [[nodiscard]] json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::dispatch(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string text_value(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST(Cli, Validate) {
  const auto ok = run({"validate", fixture("specker.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.doc()["valid"].get<bool>());

  const auto bad = run({"validate", "-"}, R"({"outcomes": ["a", "b"], "contexts": [["a", "b"], ["a"]]})");
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.doc()["violations"][0]["rule"], "context-antichain");

  EXPECT_EQ(run({"validate", "-"}, "{").code, 2);
}

TEST(Cli, ValueFunctionsAndBounds) {
  const auto vf = run({"value-functions", fixture("klyachko.json")});
  EXPECT_EQ(vf.code, 0);
  EXPECT_EQ(vf.doc()["count"], 11);
  EXPECT_EQ(vf.doc()["value_functions"].size(), 11u);
  EXPECT_FALSE(run({"value-functions", fixture("klyachko.json"), "--count-only"}).doc().contains("value_functions"));

  const auto cb = run({"classical-bound", fixture("klyachko.json"), "--coeffs", "ones"});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.doc()["bound"], "2");

  const auto empty = run({"classical-bound", fixture("specker.json"), "--coeffs", "ones"});
  EXPECT_EQ(empty.code, 1);
  EXPECT_EQ(empty.doc()["status"], "empty-polytope");

  const auto sb = run({"state-bound", fixture("klyachko.json"), "--coeffs", "-"}, R"({"coefficients": {"0": 1, "1": 1, "2": 1, "3": 1, "4": 1}})");
  EXPECT_EQ(sb.code, 0);
  EXPECT_EQ(sb.doc()["value"], "5/2");
  EXPECT_EQ(run({"state-bound", fixture("no_state.json"), "--coeffs", "ones"}).code, 1);
}

TEST(Cli, NodeBudgetExit) {
  EXPECT_EQ(run({"--node-budget", "3", "value-functions", fixture("klyachko.json")}).code, 3);
}

TEST(Cli, Membership) {
  const auto half = run({"membership", fixture("klyachko.json"), "--state", fixture("klyachko_half.json")});
  EXPECT_EQ(half.code, 1);
  EXPECT_EQ(half.doc()["verdict"], "not-member");
  const auto mix = run({"membership", fixture("klyachko.json"), "--state", fixture("klyachko_mixture.json")});
  EXPECT_EQ(mix.code, 0);
  EXPECT_EQ(mix.doc()["verdict"], "member");
  EXPECT_FALSE(mix.doc()["decomposition"].empty());
}

TEST(Cli, QuantumScenarioIsCanonical) {
  const auto r = run({"quantum-scenario", fixture("caves_vectors.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, testing_support::read_fixture("antidist_example.json"));
  const auto yu = run({"--format", "text", "quantum-scenario", fixture("yu_oh_13.json")});
  EXPECT_NE(yu.out.find("13 outcomes, 4 contexts, 12 partial contexts"), std::string::npos);
}

TEST(Cli, CheckAntiModes) {
  const auto yes = run({"check-anti", "--overlaps", "1/9,1/3,1/3"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_TRUE(yes.doc()["boundary"].get<bool>());
  EXPECT_EQ(run({"check-anti", "--overlaps", "1,0,0"}).code, 1);
  EXPECT_EQ(run({"check-anti", "--overlaps", "1,0"}).code, 2);
  EXPECT_EQ(run({"check-anti", "--overlaps", "1.5,0,0"}).code, 2);

  const auto vec = run({"check-anti", "--vectors", fixture("yu_oh_13.json"), "--triple", "h0,h1,z1"});
  EXPECT_EQ(vec.code, 0);

  const auto cert = run({"check-anti", "--certificate", fixture("caves_certificate.json")});
  EXPECT_EQ(cert.code, 0);
  EXPECT_EQ(cert.doc()["via"], "certificate");

  const auto scen = run({"check-anti", "--scenario", fixture("antidist_example.json"), "--set", "a1,a2,a3"});
  EXPECT_EQ(scen.code, 0);
  EXPECT_EQ(scen.doc()["witness"]["perp"]["a2"], "a2_perp");

  EXPECT_EQ(run({"check-anti"}).code, 2);
  EXPECT_EQ(run({"check-anti", "--overlaps", "0,0,0", "--certificate", "x"}).code, 2);
}

TEST(Cli, TextAndJsonNumbersAgree) {
  const std::vector<std::string> args{"check-anti", "--overlaps", "0.1,0.2,0.3"};
  auto with_text = args;
  with_text.insert(with_text.begin(), {"--format", "text"});
  const auto j = run(args).doc();
  const auto t = run(with_text).out;
  EXPECT_EQ(text_value(t, "margin_strict"), j["margin_strict"].dump());
  EXPECT_EQ(text_value(t, "margin_quadratic"), j["margin_quadratic"].dump());
}

TEST(Cli, AntisetPipeline) {
  const auto v = fixture("yu_oh_13.json");
  const auto verified = run({"antiset", "verify", v, "--members", "h0,h1,h2,h3", "--principal", "z1,z2,z3", "--emit"});
  ASSERT_EQ(verified.code, 0) << verified.err;
  EXPECT_EQ(verified.doc()["triples"].size(), 18u);
  const auto ineq = verified.doc()["inequality"].dump();

  const auto eval = run({"inequality", "evaluate", "-", "--vectors", v, "--rho", "mixed"}, ineq);
  EXPECT_EQ(eval.code, 0);
  EXPECT_NEAR(eval.doc()["lhs"].get<double>(), 4.0 / 3.0, 1e-9);

  const auto aug = run({"inequality", "augment", "-", "--normalize", "z1,z2,z3"}, ineq);
  EXPECT_EQ(aug.doc()["bound"], "2");

  const auto found = run({"antiset", "find", v, "--members", "h0,h1,h2,h3", "--principal", "z1,z2,z3"});
  EXPECT_EQ(found.code, 0);
  EXPECT_EQ(found.doc()["antisets"].size(), 1u);

  const auto failed = run({"antiset", "verify", v, "--members", "h0,y1p", "--principal", "z1,z2,z3"});
  EXPECT_EQ(failed.code, 1);
  EXPECT_FALSE(failed.doc()["verified"].get<bool>());

  EXPECT_EQ(run({"antiset", "verify", v, "--members", "h0,h1", "--principal", "z1,z2"}).code, 2);
}

TEST(Cli, WeakAntisetAndConstrainedOutcome) {
  const auto sic = run({"generate", "sic", "--d", "3"});
  ASSERT_EQ(sic.code, 0);
  const auto emitted = run({"inequality", "emit", "-", "--members", "all", "--principal", "a1", "--kind", "weak"}, sic.out);
  ASSERT_EQ(emitted.code, 0) << emitted.err;
  EXPECT_EQ(emitted.doc()["kind"], "state-dependent");
  const auto aug = run({"inequality", "augment", "-", "--constrained", "a1"}, emitted.out);
  EXPECT_EQ(aug.doc()["bound"], "2");
  EXPECT_EQ(run({"inequality", "augment", "-", "--constrained", "a2"}, emitted.out).code, 2);
  EXPECT_EQ(run({"inequality", "augment", "-", "--constrained", "a1", "--normalize", "a1"}, emitted.out).code, 2);
}

TEST(Cli, EvaluateNotViolatedExitsOne) {
  const auto m = run({"generate", "maroney", "--d", "4"});
  const auto emitted = run({"inequality", "emit", "-", "--members", "all", "--principal", "c", "--kind", "weak"}, m.out);
  ASSERT_EQ(emitted.code, 0);
  // A file name is needed for the vectors because stdin carries the inequality.
  const auto path = (std::filesystem::temp_directory_path() / "antictx_maroney4.json").string();
  {
    std::ofstream f(path);
    f << m.out;
  }
  const auto r = run({"inequality", "evaluate", "-", "--vectors", path, "--rho", "pure:c"}, emitted.out);
  std::remove(path.c_str());
  EXPECT_EQ(r.code, 1);
  EXPECT_NEAR(r.doc()["lhs"].get<double>(), 1.0, 1e-9);
}

TEST(Cli, Generate) {
  const auto s = run({"generate", "specker"});
  EXPECT_EQ(s.out, save_scenario(specker_triangle()));
  const auto h = run({"generate", "hadamard", "--d", "3", "--subset", "B0"});
  EXPECT_EQ(h.doc()["states"].size(), 4u);
  EXPECT_EQ(run({"generate", "mub", "--d", "4"}).code, 2);
  EXPECT_EQ(run({"generate", "hadamard", "--subset", "B2"}).code, 2);
  EXPECT_EQ(run({"generate", "nothing"}).code, 2);
}

TEST(Cli, UsageErrors) {
  const auto none = run({});
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("usage: antictx"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "validate", "x"}).code, 2);
  EXPECT_EQ(run({"--tolerance", "-1", "reproduce"}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ReproduceAllRowsPass) {
  for (const std::string tol : {"1e-9", "1e-2"}) {
    const auto r = run({"--tolerance", tol, "reproduce"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = r.doc();
    ASSERT_EQ(rows.size(), 17u);
    for (const auto& row : rows) EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
  }
  const auto text = run({"--format", "text", "reproduce"});
  EXPECT_NE(text.out.find("mub_d5"), std::string::npos);
  EXPECT_NE(text.out.find("expected:"), std::string::npos);
}

TEST(Cli, ReproduceDetectsCorruptedFamily) {
  cli::ReproduceOptions opts;
  opts.state_hook = [](std::string_view family, PureStateSet s) {
    if (family != "mub") return s;
    std::vector<LabeledState> states(s.states().begin(), s.states().end());
    Vector& v = states[7].vector;
    v(0) += 0.05;
    v.normalize();
    return PureStateSet(s.dimension(), states);
  };
  const auto rows = cli::reproduce(opts);
  for (const auto& row : rows) EXPECT_EQ(row.pass, row.example != "mub_d5") << row.example << ": " << row.observed;
}
