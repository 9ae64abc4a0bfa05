#pragma once

#include <vector>

#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"

namespace rsf {

struct OracleOptions {
  int max_N = 4;
  std::size_t max_atoms = 12;
  long double max_work = 5e7;
};

/// E of the product of normalized traces, by summing over index functions and
/// Wick pairings of the underlying Gaussian entries. Wishart needs a numeric c
/// with cN an integer, or explicit D.
Rational wick_expectation(const TraceExpression& expr, const ModelMap& models, int N, const OracleOptions& opt = {});

/// E of the product of unnormalized traces Tr(w_1)...Tr(w_r); empty words are Tr(I) = N.
Rational oracle_trace_product(const std::vector<std::vector<Letter>>& traces, const ModelMap& models, int N,
                              const OracleOptions& opt = {});

/// k_r(Tr(w_1), ..., Tr(w_r)) by Möbius inversion over set partitions.
Rational oracle_trace_cumulant(const std::vector<std::vector<Letter>>& traces, const ModelMap& models, int N,
                               const OracleOptions& opt = {});

/// k_r of Tr of products of centred factors, by expanding A - E tr(A) I.
Rational oracle_centred_cumulant(const CentredExpression& expr, const ModelMap& models, int N,
                                 const OracleOptions& opt = {});

/// Any parsed expression at a concrete N.
Rational oracle_value(const Expression& e, const ModelMap& models, int N, const OracleOptions& opt = {});

/// The oracle value in report form; equals wick_expectation for a product of tr's.
Rational mc_crosscheck_value(const Expression& e, const ModelMap& models, int N, const OracleOptions& opt = {});

/// Wishart row count M for a model at dimension N: explicit D size, or cN
/// (must be an integer here).
int oracle_rows(const EnsembleModel& m, int N);

}  // namespace rsf
