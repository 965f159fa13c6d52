#pragma once

// Contextuality scenarios: an outcome set together with a family of contexts
// (complete measurements) and a family of maximal partial contexts.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "antictx/errors.hpp"
#include "antictx/rational.hpp"

namespace antictx {

using Label = std::string;
/// Sorted, duplicate-free list of labels.
using LabelSet = std::vector<Label>;
/// Linear functional over outcomes. Missing labels have coefficient 0.
using Coefficients = std::map<Label, Rational>;

/// Unvalidated input shape, as read from a document or assembled by hand.
struct ScenarioCandidate {
  std::vector<Label> outcomes;
  std::vector<std::vector<Label>> contexts;
  std::vector<std::vector<Label>> partial_contexts;
};

struct Finding {
  std::string rule;
  std::vector<LabelSet> sets;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Finding> violations;
  std::vector<Finding> warnings;

  [[nodiscard]] bool has_violation(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Finding& f) { return f.rule == rule; });
  }
  [[nodiscard]] bool has_warning(std::string_view rule) const {
    return std::any_of(warnings.begin(), warnings.end(), [&](const Finding& f) { return f.rule == rule; });
  }
  [[nodiscard]] std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations) {
      os << v.rule << ":";
      for (const auto& set : v.sets) {
        os << " {";
        for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
        os << "}";
      }
      os << "; ";
    }
    return os.str();
  }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("invalid scenario: " + report.summary()), report_(std::move(report)) {}
  [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {

inline LabelSet normalize_set(std::vector<Label> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

inline std::vector<LabelSet> normalize_family(const std::vector<std::vector<Label>>& family) {
  std::vector<LabelSet> out;
  out.reserve(family.size());
  for (const auto& set : family) out.push_back(normalize_set(set));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Both arguments sorted.
inline bool is_proper_subset(const LabelSet& a, const LabelSet& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool is_subset(const LabelSet& a, const LabelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool has_control_character(std::string_view label) {
  return std::any_of(label.begin(), label.end(), [](char ch) {
    const auto u = static_cast<unsigned char>(ch);
    return u < 0x20 || u == 0x7f;
  });
}

inline void check_antichain(const std::vector<LabelSet>& family, const char* rule, ValidationReport& report) {
  for (const auto& a : family) {
    if (a.empty()) continue;
    for (const auto& b : family) {
      if (is_proper_subset(a, b)) report.violations.push_back({rule, {a, b}});
    }
  }
}

}  // namespace detail

/// Reports every structural problem of a candidate; never throws.
///
/// Duplicate sets and repeated labels inside one set are not problems: both
/// are collapsed by set semantics before the checks run. A partial context
/// contained in a context is only a warning.
inline ValidationReport validate_scenario(const ScenarioCandidate& raw) {
  ValidationReport report;

  std::vector<Label> sorted_outcomes = raw.outcomes;
  std::sort(sorted_outcomes.begin(), sorted_outcomes.end());
  for (std::size_t i = 0; i < sorted_outcomes.size(); ++i) {
    const auto& label = sorted_outcomes[i];
    if (label.empty()) report.violations.push_back({"empty-label", {{label}}});
    if (detail::has_control_character(label)) report.violations.push_back({"label-charset", {{label}}});
    if (i > 0 && sorted_outcomes[i - 1] == label &&
        (i == 1 || sorted_outcomes[i - 2] != label)) {
      report.violations.push_back({"duplicate-outcome", {{label}}});
    }
  }
  sorted_outcomes.erase(std::unique(sorted_outcomes.begin(), sorted_outcomes.end()), sorted_outcomes.end());

  const auto contexts = detail::normalize_family(raw.contexts);
  const auto partials = detail::normalize_family(raw.partial_contexts);

  auto check_members = [&](const std::vector<LabelSet>& family) {
    for (const auto& set : family) {
      if (set.empty()) {
        report.violations.push_back({"empty-set", {set}});
        continue;
      }
      LabelSet unknown;
      std::set_difference(set.begin(), set.end(), sorted_outcomes.begin(), sorted_outcomes.end(),
                          std::back_inserter(unknown));
      if (!unknown.empty()) report.violations.push_back({"unknown-label", {set, unknown}});
    }
  };
  check_members(contexts);
  check_members(partials);

  detail::check_antichain(contexts, "context-antichain", report);
  detail::check_antichain(partials, "partial-antichain", report);

  for (const auto& n : partials) {
    if (std::binary_search(contexts.begin(), contexts.end(), n)) {
      report.violations.push_back({"M-not-in-N", {n}});
      continue;
    }
    if (n.empty()) continue;
    for (const auto& m : contexts) {
      if (detail::is_subset(n, m)) report.warnings.push_back({"partial-subset-of-context", {n, m}});
    }
  }

  report.valid = report.violations.empty();
  return report;
}

/// A validated scenario in canonical form: outcomes sorted by label, every
/// set sorted internally, and both families sorted and duplicate-free.
/// Immutable after construction.
class Scenario {
 public:
  /// Throws ValidationError when the candidate breaks any invariant.
  explicit Scenario(const ScenarioCandidate& raw) {
    auto report = validate_scenario(raw);
    if (!report.valid) throw ValidationError(std::move(report));
    outcomes_ = detail::normalize_set(raw.outcomes);
    contexts_ = detail::normalize_family(raw.contexts);
    partial_contexts_ = detail::normalize_family(raw.partial_contexts);
    context_indices_ = to_indices(contexts_);
    partial_indices_ = to_indices(partial_contexts_);
  }

  Scenario(std::vector<Label> outcomes, std::vector<std::vector<Label>> contexts,
           std::vector<std::vector<Label>> partial_contexts = {})
      : Scenario(ScenarioCandidate{std::move(outcomes), std::move(contexts), std::move(partial_contexts)}) {}

  [[nodiscard]] const std::vector<Label>& outcomes() const noexcept { return outcomes_; }
  [[nodiscard]] const std::vector<LabelSet>& contexts() const noexcept { return contexts_; }
  [[nodiscard]] const std::vector<LabelSet>& partial_contexts() const noexcept { return partial_contexts_; }
  [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }

  [[nodiscard]] const std::vector<std::vector<std::size_t>>& context_indices() const noexcept {
    return context_indices_;
  }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& partial_indices() const noexcept {
    return partial_indices_;
  }

  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const {
    const auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes_.begin());
  }

  [[nodiscard]] std::size_t require_index(std::string_view label) const {
    if (auto idx = index_of(label)) return *idx;
    throw UnknownLabelError("unknown outcome label '" + std::string(label) + "'");
  }

  /// Dense coefficient vector in outcome order; unknown labels throw.
  [[nodiscard]] std::vector<Rational> dense(const Coefficients& coeffs) const {
    std::vector<Rational> out(outcomes_.size());
    for (const auto& [label, value] : coeffs) out[require_index(label)] = value;
    return out;
  }

  /// True when some context or partial context contains both outcomes.
  [[nodiscard]] bool co_occur(std::size_t a, std::size_t b) const {
    auto in = [&](const std::vector<std::vector<std::size_t>>& family) {
      return std::any_of(family.begin(), family.end(), [&](const auto& set) {
        return std::binary_search(set.begin(), set.end(), a) && std::binary_search(set.begin(), set.end(), b);
      });
    };
    return in(context_indices_) || in(partial_indices_);
  }

  friend bool operator==(const Scenario& x, const Scenario& y) {
    return x.outcomes_ == y.outcomes_ && x.contexts_ == y.contexts_ && x.partial_contexts_ == y.partial_contexts_;
  }

 private:
  // Index lists inherit sortedness from the label order.
  [[nodiscard]] std::vector<std::vector<std::size_t>> to_indices(const std::vector<LabelSet>& family) const {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(family.size());
    for (const auto& set : family) {
      std::vector<std::size_t> idx;
      idx.reserve(set.size());
      for (const auto& label : set) idx.push_back(*index_of(label));
      out.push_back(std::move(idx));
    }
    return out;
  }

  std::vector<Label> outcomes_;
  std::vector<LabelSet> contexts_;
  std::vector<LabelSet> partial_contexts_;
  std::vector<std::vector<std::size_t>> context_indices_;
  std::vector<std::vector<std::size_t>> partial_indices_;
};

// ---------------------------------------------------------------------------
// JSON form: {"outcomes": [...], "contexts": [[...]], "partial_contexts": [[...]]}

namespace detail {

inline std::vector<Label> parse_label_list(const nlohmann::json& j, std::string_view where) {
  if (!j.is_array()) throw ParseError(std::string(where) + " must be an array of strings");
  std::vector<Label> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(std::string(where) + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline std::vector<std::vector<Label>> parse_family(const nlohmann::json& j, std::string_view where) {
  if (!j.is_array()) throw ParseError(std::string(where) + " must be an array of arrays");
  std::vector<std::vector<Label>> out;
  for (const auto& set : j) out.push_back(parse_label_list(set, where));
  return out;
}

inline nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace detail

inline ScenarioCandidate parse_scenario_candidate(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "outcomes" && key != "contexts" && key != "partial_contexts") {
      throw ParseError("unknown key '" + key + "' in scenario document");
    }
  }
  if (!doc.contains("outcomes")) throw ParseError("scenario document lacks 'outcomes'");
  ScenarioCandidate raw;
  raw.outcomes = detail::parse_label_list(doc.at("outcomes"), "outcomes");
  if (doc.contains("contexts")) raw.contexts = detail::parse_family(doc.at("contexts"), "contexts");
  if (doc.contains("partial_contexts")) {
    raw.partial_contexts = detail::parse_family(doc.at("partial_contexts"), "partial_contexts");
  }
  return raw;
}

inline ScenarioCandidate parse_scenario_candidate(std::string_view text) {
  return parse_scenario_candidate(detail::parse_json_text(text));
}

/// Throws ParseError or ValidationError.
inline ScenarioCandidate parse_scenario_candidate(const std::string& text) {
  return parse_scenario_candidate(std::string_view(text));
}
inline ScenarioCandidate parse_scenario_candidate(const char* text) {
  return parse_scenario_candidate(std::string_view(text));
}

inline Scenario load_scenario(std::string_view text) { return Scenario(parse_scenario_candidate(text)); }

inline Scenario load_scenario(std::istream& in) { return load_scenario(detail::read_all(in)); }

/// Canonical, byte-stable serialization.
inline std::string save_scenario(const Scenario& s) {
  auto quoted = [](const std::string& label) { return nlohmann::json(label).dump(); };
  auto list = [&](const std::vector<Label>& labels) {
    std::string out = "[";
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + quoted(labels[i]);
    return out + "]";
  };
  auto family = [&](const std::vector<LabelSet>& sets) {
    if (sets.empty()) return std::string("[]");
    std::string out = "[\n";
    for (std::size_t i = 0; i < sets.size(); ++i) out += "    " + list(sets[i]) + (i + 1 < sets.size() ? ",\n" : "\n");
    return out + "  ]";
  };
  std::string out = "{\n";
  out += "  \"outcomes\": " + list(s.outcomes()) + ",\n";
  out += "  \"contexts\": " + family(s.contexts()) + ",\n";
  out += "  \"partial_contexts\": " + family(s.partial_contexts()) + "\n";
  out += "}\n";
  return out;
}

}  // namespace antictx
