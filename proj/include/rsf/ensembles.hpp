#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "rsf/diagrams.hpp"
#include "rsf/laurent.hpp"
#include "rsf/perm.hpp"
#include "rsf/rational.hpp"

namespace rsf {

using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

enum class EnsembleKind { Ginibre, GOE, Wishart };
std::string to_string(EnsembleKind k);
EnsembleKind parse_ensemble_kind(const std::string& s);

struct EnsembleModel {
  EnsembleKind kind = EnsembleKind::GOE;
  /// Wishart with identity D: c = M/N; nullopt keeps c symbolic.
  std::optional<Rational> ratio;
  /// Wishart with explicit D_λ (all M×M, real); empty means D_λ = I_M.
  std::map<std::string, RMatrix> D;

  static EnsembleModel ginibre() { return {EnsembleKind::Ginibre, std::nullopt, {}}; }
  static EnsembleModel goe() { return {EnsembleKind::GOE, std::nullopt, {}}; }
  static EnsembleModel wishart(std::optional<Rational> c = std::nullopt) {
    return {EnsembleKind::Wishart, std::move(c), {}};
  }
  static EnsembleModel wishart_explicit(std::map<std::string, RMatrix> d);

  bool explicit_d() const { return kind == EnsembleKind::Wishart && !D.empty(); }
  /// M for explicit D; throws otherwise.
  int dimension() const;
  const RMatrix& matrix(const std::string& label) const;
  ClassKind premap_class() const;
};

using ModelMap = std::map<std::string, EnsembleModel>;

struct Letter {
  std::string colour;
  std::string label;
  bool transpose = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Letters 1..n grouped into traces by the cycles of γ on [n].
struct TraceExpression {
  std::vector<Letter> letters;
  SignedPermutation gamma;

  /// Consecutive letters per trace; traces must be nonempty.
  static TraceExpression from_traces(const std::vector<std::vector<Letter>>& traces);
  std::size_t size() const { return letters.size(); }
  std::size_t trace_count() const;
  void validate(const ModelMap& models) const;
};

/// Traces of products of centred factors; each factor is a product of
/// letters of a single colour.
struct CentredExpression {
  std::vector<std::vector<std::vector<Letter>>> traces;
  void validate(const ModelMap& models) const;
};

struct ExactOptions {
  long double max_terms = 1e8;
};

/// f_c(π) for π in the model's premap class on ±I; letters are indexed by
/// position (letters[k-1] sits at k). Wishart transposes are folded into D.
LaurentValue weight(const EnsembleModel& model, const SignedPermutation& pi, const IntSet& I,
                    const std::vector<Letter>& letters);

/// E of the product of normalized traces (tr).
LaurentValue exact_moment(const TraceExpression& expr, const ModelMap& models, const ExactOptions& opt = {});
/// k_r of the unnormalized traces (Tr), r = number of traces.
LaurentValue exact_trace_cumulant(const TraceExpression& expr, const ModelMap& models, const ExactOptions& opt = {});
/// k_r of Tr of products of centred factors.
LaurentValue exact_centred_cumulant(const CentredExpression& expr, const ModelMap& models,
                                    const ExactOptions& opt = {});

/// Product over the cycles of π of Tr of the matrix product along the cycle;
/// a negative entry -k stands for the transpose of X_k.
Rational trace_along(const SignedPermutation& pi, const std::map<int, RMatrix>& matrices);

/// Projected number of premap tuples for an expression.
long double term_count(const TraceExpression& expr, const ModelMap& models);

}  // namespace rsf
