#pragma once

#include <string>
#include <vector>

#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"

namespace rsf {

struct LimitValue {
  LaurentValue value;  // polynomial in c at most
  std::string provenance;
};

/// lim E tr(word) for a single-colour word, from disc-noncrossing permutations.
LimitValue phi1(const std::vector<Letter>& word, const EnsembleModel& model, EnumerationGuard guard = {10});
/// lim k2(Tr(w1), Tr(w2)) for single-colour words, from annular-noncrossing
/// permutations in both relative orientations.
LimitValue phi2(const std::vector<Letter>& w1, const std::vector<Letter>& w2, const EnsembleModel& model,
                EnumerationGuard guard = {10});

Rational closed_form_goe_fluct(int p, int q);
/// Identity-D, c = 1 Wishart formula as printed; reference only.
Rational closed_form_wishart_fluct(int p, int q);
Rational catalan(int k);

/// E tr(Å_1...Å_p) for a (linearly) alternating product of centred single-colour factors.
LaurentValue freeness_defect(const std::vector<std::vector<Letter>>& factors, const ModelMap& models,
                             const ExactOptions& opt = {});

/// φ1 of a mixed word: constant term of the exact moment.
LaurentValue phi1_mixed(const std::vector<Letter>& word, const ModelMap& models, const ExactOptions& opt = {});

/// Spoke-diagram sums Σ_k ∏ φ1(å_i b̊_{k-i}) + Σ_k ∏ φ1(å_i b̊ᵗ_{k+i}); 0 for p ≠ q.
LaurentValue second_order_rhs(const std::vector<std::vector<Letter>>& a, const std::vector<std::vector<Letter>>& b,
                              const ModelMap& models, const ExactOptions& opt = {});
/// Constant term of the exact k2(Tr(Å_1...Å_p), Tr(B̊_1...B̊_q)).
LaurentValue second_order_lhs(const std::vector<std::vector<Letter>>& a, const std::vector<std::vector<Letter>>& b,
                              const ModelMap& models, const ExactOptions& opt = {});

/// Exact k_r of Tr's for r ≥ 3; vanishes in the limit iff every N power is negative.
LaurentValue higher_cumulant(const std::vector<std::vector<Letter>>& traces, const ModelMap& models,
                             const ExactOptions& opt = {});
bool vanishes_in_limit(const LaurentValue& v);

/// Throws unless consecutive factors have different colours (also last and
/// first when cyclic) and each factor is single-coloured and nonempty.
void require_alternating(const std::vector<std::vector<Letter>>& factors, bool cyclic = true);

}  // namespace rsf
