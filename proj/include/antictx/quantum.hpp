#pragma once

// Labelled pure states in C^d: overlaps, frame operators, Born-rule values
// and the orthogonality-graph construction of quantum scenarios.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "antictx/cliques.hpp"
#include "antictx/errors.hpp"
#include "antictx/rational.hpp"
#include "antictx/scenario.hpp"

namespace antictx {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical tolerances shared by the floating-point layer.
struct Tolerances {
  double norm = 1e-9;
  double orth = 1e-9;
  double frame = 1e-9;
  double strict = 1e-9;
  double quad = 1e-9;

  static Tolerances uniform(double eps) { return {eps, eps, eps, eps, eps}; }
};

struct LabeledState {
  Label label;
  Vector vector;
};

/// Ordered list of unit vectors with unique labels.
class PureStateSet {
 public:
  PureStateSet() = default;

  PureStateSet(int dimension, std::vector<LabeledState> states, double eps_norm = 1e-9)
      : dimension_(dimension), states_(std::move(states)) {
    if (dimension_ < 1) throw PreconditionError("dimension must be positive");
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto& s = states_[i];
      if (s.label.empty()) throw ParseError("state label must be nonempty");
      if (s.vector.size() != dimension_) {
        throw DimensionMismatchError("state '" + s.label + "' has " + std::to_string(s.vector.size()) +
                                     " components, expected " + std::to_string(dimension_));
      }
      if (std::abs(s.vector.norm() - 1.0) > eps_norm) {
        throw PreconditionError("state '" + s.label + "' is not a unit vector");
      }
      if (index_.count(s.label)) throw PreconditionError("duplicate state label '" + s.label + "'");
      index_.emplace(s.label, i);
    }
  }

  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] const std::vector<LabeledState>& states() const noexcept { return states_; }
  [[nodiscard]] const Label& label(std::size_t i) const { return states_[i].label; }
  [[nodiscard]] const Vector& vector(std::size_t i) const { return states_[i].vector; }

  [[nodiscard]] std::vector<Label> labels() const {
    std::vector<Label> out;
    for (const auto& s : states_) out.push_back(s.label);
    return out;
  }

  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const Vector& vector(const std::string& label) const {
    if (auto i = index_of(label)) return states_[*i].vector;
    throw MissingLabelError("no state labelled '" + label + "'");
  }

  /// States with the given labels, in the given order.
  [[nodiscard]] PureStateSet subset(const std::vector<Label>& labels) const {
    std::vector<LabeledState> out;
    for (const auto& l : labels) out.push_back({l, vector(l)});
    return PureStateSet(dimension_, std::move(out), 1e-6);
  }

  /// Concatenation; labels must stay unique.
  [[nodiscard]] PureStateSet merged(const PureStateSet& other) const {
    if (other.dimension_ != dimension_) throw DimensionMismatchError("cannot merge state sets of different dimension");
    auto all = states_;
    all.insert(all.end(), other.states_.begin(), other.states_.end());
    return PureStateSet(dimension_, std::move(all), 1e-6);
  }

 private:
  int dimension_ = 0;
  std::vector<LabeledState> states_;
  std::map<Label, std::size_t> index_;
};

/// |<a|b>|^2
inline double overlap(const Vector& a, const Vector& b) { return std::norm(a.dot(b)); }

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityOperator {
 public:
  /// Throws PreconditionError when the matrix is not a density operator within eps.
  explicit DensityOperator(Matrix m, double eps = 1e-9) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
      throw DimensionMismatchError("density operator must be a nonempty square matrix");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > eps) {
      throw PreconditionError("density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > eps) throw PreconditionError("density operator trace is not 1");
    const Matrix herm = (matrix_ + matrix_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -eps) throw PreconditionError("density operator has a negative eigenvalue");
  }

  static DensityOperator maximally_mixed(int d) {
    return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  static DensityOperator pure(const Vector& psi) { return DensityOperator(psi * psi.adjoint() / psi.squaredNorm()); }

  /// G G^dagger / tr(G G^dagger) with G a complex Gaussian matrix.
  template <class Rng>
  static DensityOperator random(int d, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(rho);
  }

  [[nodiscard]] int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }

  /// <a|rho|a>
  [[nodiscard]] double probability(const Vector& a) const { return a.dot(matrix_ * a).real(); }

 private:
  Matrix matrix_;
};

struct GramData {
  std::vector<Label> labels;
  Eigen::MatrixXd overlaps;
};

/// Squared overlaps, computed once per unordered pair.
inline GramData gram(const PureStateSet& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  GramData g{states.labels(), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double x = overlap(states.vector(static_cast<std::size_t>(i)), states.vector(static_cast<std::size_t>(j)));
      g.overlaps(i, j) = x;
      g.overlaps(j, i) = x;
    }
  }
  return g;
}

struct FrameResult {
  Matrix frame;
  /// trace(F)/d, present only when F is proportional to the identity.
  std::optional<double> lambda;
};

inline FrameResult frame_operator(const PureStateSet& states, double eps_frame = 1e-9) {
  const int d = states.dimension();
  Matrix f = Matrix::Zero(d, d);
  for (const auto& s : states.states()) f += s.vector * s.vector.adjoint();
  const double lambda = f.trace().real() / d;
  const double dev = (f - lambda * Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  FrameResult out{f, std::nullopt};
  if (dev <= eps_frame) out.lambda = lambda;
  return out;
}

using RealCoefficients = std::map<Label, double>;

inline RealCoefficients to_real(const Coefficients& c) {
  RealCoefficients out;
  for (const auto& [label, value] : c) out[label] = to_double(value);
  return out;
}

/// sum_a c_a <a|rho|a>
inline double quantum_value(const PureStateSet& states, const RealCoefficients& coeffs, const DensityOperator& rho) {
  if (rho.dimension() != states.dimension()) {
    throw DimensionMismatchError("density operator dimension " + std::to_string(rho.dimension()) +
                                 " differs from state dimension " + std::to_string(states.dimension()));
  }
  double total = 0;
  for (const auto& [label, c] : coeffs) total += c * rho.probability(states.vector(label));
  return total;
}

/// All-ones coefficients over every state in the set.
inline RealCoefficients all_ones(const PureStateSet& states) {
  RealCoefficients out;
  for (const auto& s : states.states()) out[s.label] = 1.0;
  return out;
}

/// Scenario generated by the orthogonality graph: maximal cliques of size d
/// are contexts, smaller maximal cliques (other than isolated vertices) are
/// partial contexts.
inline Scenario scenario_from_states(const PureStateSet& states, double eps_orth = 1e-9) {
  const int d = states.dimension();
  if (d < 2) throw PreconditionError("quantum scenarios need dimension at least 2");
  const auto g = gram(states);
  const auto n = states.size();
  auto adj = empty_graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = g.overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (x >= 1.0 - eps_orth) {
        throw DuplicateRayError("states '" + states.label(i) + "' and '" + states.label(j) + "' are the same ray");
      }
      if (x > eps_orth && x < 10.0 * eps_orth) {
        throw ToleranceAmbiguityError("overlap of '" + states.label(i) + "' and '" + states.label(j) +
                                      "' lies inside the orthogonality guard band");
      }
      if (x <= eps_orth) add_edge(adj, i, j);
    }
  }

  ScenarioCandidate raw;
  raw.outcomes = states.labels();
  for (const auto& clique : maximal_cliques(adj)) {
    if (clique.size() > static_cast<std::size_t>(d)) {
      throw std::logic_error("more than d mutually orthogonal unit vectors");
    }
    if (clique.size() < 2) continue;
    std::vector<Label> set;
    for (auto i : clique) set.push_back(states.label(i));
    (clique.size() == static_cast<std::size_t>(d) ? raw.contexts : raw.partial_contexts).push_back(std::move(set));
  }
  return Scenario(raw);
}

// ---------------------------------------------------------------------------
// Vector-set JSON: {"dimension": d, "states": [{"label": ..., "components": [[re, im], ...]}]}

namespace detail {

inline Vector parse_components(const nlohmann::json& j, const std::string& label) {
  if (!j.is_array()) throw ParseError("components of '" + label + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& c = j[k];
    if (c.is_number()) {
      v(static_cast<Eigen::Index>(k)) = Complex(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      v(static_cast<Eigen::Index>(k)) = Complex(c[0].get<double>(), c[1].get<double>());
    } else {
      throw ParseError("component of '" + label + "' must be [re, im]");
    }
  }
  return v;
}

inline void check_keys(const nlohmann::json& doc, std::initializer_list<const char*> allowed, const char* what) {
  if (!doc.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParseError("unknown key '" + key + "' in " + what);
    }
  }
}

inline std::vector<LabeledState> parse_state_list(const nlohmann::json& doc) {
  if (!doc.contains("states") || !doc.at("states").is_array()) throw ParseError("vector set lacks a 'states' array");
  std::vector<LabeledState> out;
  for (const auto& item : doc.at("states")) {
    check_keys(item, {"label", "components"}, "state entry");
    if (!item.contains("label") || !item.at("label").is_string()) throw ParseError("state entry lacks a label");
    const auto label = item.at("label").get<std::string>();
    if (!item.contains("components")) throw ParseError("state '" + label + "' lacks components");
    out.push_back({label, parse_components(item.at("components"), label)});
  }
  return out;
}

inline int parse_dimension(const nlohmann::json& doc) {
  if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer()) {
    throw ParseError("vector set lacks an integer 'dimension'");
  }
  return doc.at("dimension").get<int>();
}

}  // namespace detail

inline PureStateSet parse_states(const nlohmann::json& doc, double eps_norm = 1e-9) {
  detail::check_keys(doc, {"dimension", "states"}, "vector set");
  return PureStateSet(detail::parse_dimension(doc), detail::parse_state_list(doc), eps_norm);
}

inline PureStateSet load_states(std::string_view text, double eps_norm = 1e-9) {
  return parse_states(detail::parse_json_text(text), eps_norm);
}

inline nlohmann::json states_to_json(const PureStateSet& states) {
  nlohmann::json doc;
  doc["dimension"] = states.dimension();
  doc["states"] = nlohmann::json::array();
  for (const auto& s : states.states()) {
    nlohmann::json comps = nlohmann::json::array();
    for (Eigen::Index k = 0; k < s.vector.size(); ++k) comps.push_back({s.vector(k).real(), s.vector(k).imag()});
    doc["states"].push_back({{"label", s.label}, {"components", comps}});
  }
  return doc;
}

inline std::string save_states(const PureStateSet& states) { return states_to_json(states).dump(2) + "\n"; }

/// {"dimension": d, "matrix": [[[re, im], ...], ...]}
inline DensityOperator parse_density_operator(const nlohmann::json& doc, double eps = 1e-9) {
  detail::check_keys(doc, {"dimension", "matrix"}, "density operator");
  const int d = detail::parse_dimension(doc);
  if (!doc.contains("matrix") || !doc.at("matrix").is_array() || doc.at("matrix").size() != static_cast<std::size_t>(d)) {
    throw ParseError("density operator needs a d x d 'matrix'");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto row = detail::parse_components(doc.at("matrix")[static_cast<std::size_t>(i)], "matrix row");
    if (row.size() != d) throw ParseError("density operator row has the wrong length");
    m.row(i) = row.transpose();
  }
  return DensityOperator(m, eps);
}

}  // namespace antictx
