#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antictx/quantum.hpp"

namespace antictx::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kResource = 3 };

/// Runs one command. `args` excludes the program name. Output is written to
/// `out` once, after the command completes.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct ReproduceOptions {
  Tolerances tol;
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t seed = 0x5eed2024;
  /// Applied to every generated state family before it is used; the name
  /// is the row-level family key ("yu_oh", "hadamard", "mub", "maroney",
  /// "sic", "caves_example").
  std::function<PureStateSet(std::string_view family, PureStateSet)> state_hook;
};

struct ReproduceRow {
  std::string example;
  std::optional<std::string> classical_bound;
  std::optional<double> quantum_value;
  std::optional<bool> violated;
  std::string expected;
  std::string observed;
  bool pass = false;
};

std::vector<ReproduceRow> reproduce(const ReproduceOptions& opts);

}  // namespace antictx::cli
