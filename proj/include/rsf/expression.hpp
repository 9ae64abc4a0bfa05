#pragma once

#include <string>
#include <vector>

#include "rsf/ensembles.hpp"

namespace rsf {

/// One trace in an expression: tr (normalized) or Tr. A centred trace holds
/// factors, each a product of letters of one colour; a plain trace holds letters.
struct TraceTerm {
  bool normalized = true;
  bool centred = false;
  std::vector<Letter> letters;
  std::vector<std::vector<Letter>> factors;

  /// All letters in order (centred factors concatenated).
  std::vector<Letter> word() const;
  friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

enum class ExpressionKind { Moment, Cumulant };

/// A product of traces (Moment) or a classical cumulant k_r of traces.
struct Expression {
  ExpressionKind kind = ExpressionKind::Moment;
  std::vector<TraceTerm> traces;

  bool centred() const;
  std::size_t order() const { return traces.size(); }
  std::string to_string() const;
  void validate(const ModelMap& models) const;
  friend bool operator==(const Expression&, const Expression&) = default;
};

/// Grammar:
///   expr    := product | 'k(' trace (',' trace)* ')'
///   product := trace+
///   trace   := ('tr' | 'Tr') '(' (letter* | factor+) ')'
///   factor  := '[' letter+ ']'
///   letter  := IDENT ['{' label '}'] ["'"] ['^' INT]
/// The letter I is the identity and is dropped.
Expression parse_expression(const std::string& text);

std::string to_string(const Letter& l);
/// Transpose of a word: reversed with flipped transpose flags.
std::vector<Letter> transpose_word(const std::vector<Letter>& w);

/// Exact value as a Laurent polynomial in N (and c).
LaurentValue exact_value(const Expression& e, const ModelMap& models, const ExactOptions& opt = {});
/// Centring constant E tr(A) of a factor at finite N, from the exact engine.
double centring_constant(const std::vector<Letter>& factor, const ModelMap& models, int N);

}  // namespace rsf
