#pragma once

// Deterministic generators for the state families and abstract scenarios
// used throughout the examples. Every state family checks its defining
// overlap property before it is returned.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antictx/errors.hpp"
#include "antictx/quantum.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

enum class Family { yu_oh_rays, yu_oh_principal, caves_example, hadamard, mub, maroney, sic, standard_basis };
enum class HadamardSubset { b0, b1, full };

struct FamilySpec {
  Family family = Family::standard_basis;
  int dimension = 3;
  HadamardSubset subset = HadamardSubset::full;
};

inline std::optional<Family> family_from_name(std::string_view name) {
  if (name == "yu_oh_rays") return Family::yu_oh_rays;
  if (name == "yu_oh_principal") return Family::yu_oh_principal;
  if (name == "caves_example") return Family::caves_example;
  if (name == "hadamard") return Family::hadamard;
  if (name == "mub") return Family::mub;
  if (name == "maroney") return Family::maroney;
  if (name == "sic") return Family::sic;
  if (name == "standard_basis") return Family::standard_basis;
  return std::nullopt;
}

inline std::optional<HadamardSubset> subset_from_name(std::string_view name) {
  if (name == "B0") return HadamardSubset::b0;
  if (name == "B1") return HadamardSubset::b1;
  if (name == "full") return HadamardSubset::full;
  return std::nullopt;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

namespace detail {

constexpr double kGeneratorCheck = 1e-9;

inline Vector real_vector(std::initializer_list<double> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (double e : entries) v(k++) = Complex(e, 0.0);
  return v.normalized();
}

inline Vector complex_vector(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (const auto& e : entries) v(k++) = e;
  return v;
}

inline Vector basis_vector(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

inline void expect_overlap(const Vector& a, const Vector& b, double expected, const char* family) {
  if (std::abs(overlap(a, b) - expected) > kGeneratorCheck) {
    throw std::logic_error(std::string(family) + " generator failed its overlap self-check");
  }
}

inline PureStateSet standard_basis(int d, const std::string& prefix = "e") {
  std::vector<LabeledState> out;
  for (int k = 0; k < d; ++k) out.push_back({prefix + std::to_string(k), basis_vector(d, k)});
  return PureStateSet(d, std::move(out));
}

inline PureStateSet hadamard(int d, HadamardSubset subset) {
  if (d < 2 || d > 20) throw UnsupportedParameterError("hadamard family needs 2 <= d <= 20");
  std::vector<LabeledState> out;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (unsigned long x = 0; x < (1UL << d); ++x) {
    std::string bits(static_cast<std::size_t>(d), '0');
    Vector v(d);
    for (int k = 0; k < d; ++k) {
      const bool one = (x >> (d - 1 - k)) & 1UL;
      bits[static_cast<std::size_t>(k)] = one ? '1' : '0';
      v(k) = one ? -amp : amp;
    }
    const bool starts_with_one = bits.front() == '1';
    if ((subset == HadamardSubset::b0 && starts_with_one) || (subset == HadamardSubset::b1 && !starts_with_one)) continue;
    out.push_back({bits, v});
  }
  return PureStateSet(d, std::move(out));
}

// Basis 1 is the standard basis; bases 2..d+1 follow.
inline PureStateSet mub(int d) {
  if (d < 2 || d > 97 || !is_prime(d)) throw UnsupportedParameterError("mub family needs a prime 2 <= d <= 97");
  std::vector<std::vector<Vector>> bases;
  bases.push_back({});
  for (int k = 0; k < d; ++k) bases.back().push_back(basis_vector(d, k));
  if (d == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    bases.push_back({complex_vector({r, r}), complex_vector({r, -r})});
    bases.push_back({complex_vector({r, r * i}), complex_vector({r, -r * i})});
  } else {
    // Components w^(b j^2 + k j) / sqrt(d) with w = exp(2 pi i / d).
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int b = 1; b <= d; ++b) {
      std::vector<Vector> basis;
      for (int k = 0; k < d; ++k) {
        Vector v(d);
        for (int j = 0; j < d; ++j) {
          const long e = (static_cast<long>(b) * j * j + static_cast<long>(k) * j) % d;
          v(j) = std::polar(amp, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
        }
        basis.push_back(v);
      }
      bases.push_back(std::move(basis));
    }
  }
  std::vector<LabeledState> out;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    for (std::size_t k = 0; k < bases[j].size(); ++k) {
      out.push_back({"a" + std::to_string(j + 1) + "_" + std::to_string(k + 1), bases[j][k]});
    }
  }
  for (std::size_t p = 0; p < out.size(); ++p) {
    for (std::size_t q = p + 1; q < out.size(); ++q) {
      const bool same_basis = p / static_cast<std::size_t>(d) == q / static_cast<std::size_t>(d);
      expect_overlap(out[p].vector, out[q].vector, same_basis ? 0.0 : 1.0 / d, "mub");
    }
  }
  return PureStateSet(d, std::move(out));
}

inline PureStateSet maroney(int d) {
  if (d < 3) throw UnsupportedParameterError("maroney family needs d >= 3");
  std::vector<LabeledState> out;
  for (int j = 1; j < d; ++j) {
    Vector v = Vector::Zero(d);
    v(0) = 1.0 / std::sqrt(3.0);
    v(j) = std::sqrt(2.0 / 3.0);
    out.push_back({"a" + std::to_string(j), v});
  }
  out.push_back({"c", basis_vector(d, 0)});
  for (std::size_t p = 0; p + 1 < out.size(); ++p) {
    expect_overlap(out[p].vector, out.back().vector, 1.0 / 3.0, "maroney");
    for (std::size_t q = p + 1; q + 1 < out.size(); ++q) expect_overlap(out[p].vector, out[q].vector, 1.0 / 9.0, "maroney");
  }
  return PureStateSet(d, std::move(out));
}

inline PureStateSet sic(int d) {
  std::vector<LabeledState> out;
  if (d == 2) {
    out.push_back({"a1", basis_vector(2, 0)});
    for (int k = 0; k < 3; ++k) {
      Vector v(2);
      v(0) = 1.0 / std::sqrt(3.0);
      v(1) = std::polar(std::sqrt(2.0 / 3.0), 2.0 * std::numbers::pi * k / 3.0);
      out.push_back({"a" + std::to_string(k + 2), v});
    }
  } else if (d == 3) {
    // Hesse configuration: (0, 1, -w^a)/sqrt(2) and its two cyclic shifts.
    const double r = 1.0 / std::sqrt(2.0);
    int label = 1;
    for (int shift = 0; shift < 3; ++shift) {
      for (int a = 0; a < 3; ++a) {
        const Complex base[3] = {Complex(0.0), Complex(r), -std::polar(r, 2.0 * std::numbers::pi * a / 3.0)};
        Vector v(3);
        for (int k = 0; k < 3; ++k) v((k + shift) % 3) = base[k];
        out.push_back({"a" + std::to_string(label++), v});
      }
    }
  } else {
    throw UnsupportedParameterError("sic family is available for d = 2 and d = 3 only");
  }
  for (std::size_t p = 0; p < out.size(); ++p) {
    for (std::size_t q = p + 1; q < out.size(); ++q) expect_overlap(out[p].vector, out[q].vector, 1.0 / (d + 1), "sic");
  }
  PureStateSet states(d, std::move(out));
  const auto frame = frame_operator(states, kGeneratorCheck);
  if (!frame.lambda || std::abs(*frame.lambda - d) > kGeneratorCheck) {
    throw std::logic_error("sic generator failed its frame self-check");
  }
  return states;
}

}  // namespace detail

inline PureStateSet generate_states(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::yu_oh_rays: {
      PureStateSet s(3, {{"a1", detail::real_vector({1, 1, 1})},
                         {"a2", detail::real_vector({-1, 1, 1})},
                         {"a3", detail::real_vector({1, -1, 1})},
                         {"a4", detail::real_vector({1, 1, -1})}});
      for (std::size_t p = 0; p < 4; ++p) {
        for (std::size_t q = p + 1; q < 4; ++q) detail::expect_overlap(s.vector(p), s.vector(q), 1.0 / 9.0, "yu_oh_rays");
      }
      return s;
    }
    case Family::yu_oh_principal:
      return PureStateSet(3, {{"c1", detail::basis_vector(3, 0)},
                              {"c2", detail::basis_vector(3, 1)},
                              {"c3", detail::basis_vector(3, 2)}});
    case Family::caves_example:
      return PureStateSet(3, {{"a1", detail::real_vector({1, 0, 0})},
                              {"a2", detail::real_vector({1, 1, 1})},
                              {"a3", detail::real_vector({-1, 1, 1})},
                              {"a1_perp", detail::real_vector({0, 1, 0})},
                              {"a2_perp", detail::real_vector({1, 0, -1})},
                              {"a3_perp", detail::real_vector({1, 0, 1})}});
    case Family::hadamard: return detail::hadamard(spec.dimension, spec.subset);
    case Family::mub: return detail::mub(spec.dimension);
    case Family::maroney: return detail::maroney(spec.dimension);
    case Family::sic: return detail::sic(spec.dimension);
    case Family::standard_basis:
      if (spec.dimension < 1) throw UnsupportedParameterError("standard basis needs d >= 1");
      return detail::standard_basis(spec.dimension);
  }
  throw UnsupportedParameterError("unknown family");
}

// ---------------------------------------------------------------------------
// Abstract scenarios

inline Scenario classical_scenario(int n) {
  if (n < 1) throw UnsupportedParameterError("classical scenario needs n >= 1");
  std::vector<Label> x;
  for (int i = 1; i <= n; ++i) x.push_back("x" + std::to_string(i));
  return Scenario(x, {x});
}

inline Scenario partial_classical_scenario(int n) {
  if (n < 1) throw UnsupportedParameterError("partial classical scenario needs n >= 1");
  std::vector<Label> x;
  for (int i = 1; i <= n; ++i) x.push_back("x" + std::to_string(i));
  return Scenario(x, {}, {x});
}

inline Scenario specker_triangle() { return Scenario({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }

inline Scenario antidist_example() {
  return Scenario({"a1", "a2", "a3", "a1_perp", "a2_perp", "a3_perp"}, {{"a1_perp", "a2_perp", "a3_perp"}},
                  {{"a1", "a1_perp"}, {"a2", "a2_perp"}, {"a3", "a3_perp"}});
}

inline Scenario klyachko_scenario() {
  return Scenario({"0", "1", "2", "3", "4"}, {}, {{"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "0"}});
}

inline Scenario no_state_example() {
  return Scenario({"a1", "a2", "a3", "b1", "b2", "b3"},
                  {{"a1", "a2", "a3"}, {"b1", "b2", "b3"}, {"a1", "b1"}, {"a2", "b2"}, {"a3", "b3"}});
}

/// Names: classical, partial_classical (both take n), specker,
/// antidist_example, klyachko, no_state_example.
inline Scenario generate_scenario(std::string_view name, int n = 3) {
  if (name == "classical") return classical_scenario(n);
  if (name == "partial_classical") return partial_classical_scenario(n);
  if (name == "specker") return specker_triangle();
  if (name == "antidist_example") return antidist_example();
  if (name == "klyachko") return klyachko_scenario();
  if (name == "no_state_example") return no_state_example();
  throw UnsupportedParameterError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace antictx
