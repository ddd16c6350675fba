#ifndef SLICE_MATCHERS_HPP
#define SLICE_MATCHERS_HPP

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

namespace slice {

/// Exact-set-equality gate over source column names: 1 iff the sets match
/// under case-sensitive string equality (empty equals empty).
int source_schema_score(const std::set<std::string>& pred,
                        const std::set<std::string>& gold);

/// Exact-match F1 over table identifier sets. Both empty scores 1, exactly
/// one empty scores 0, and P + R == 0 scores 0.
double exact_f1(const std::set<std::string>& pred,
                const std::set<std::string>& gold);

/// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Normalized similarity ratio: 1 - distance / max(|a|, |b|), with lengths
/// measured in Unicode scalars; two empty strings score 1.
double fuzzy_match(std::string_view a, std::string_view b);

/// Symmetric average of best-match fuzzy similarities: the mean of fuzzy
/// precision (averaged over predicted tables) and fuzzy recall (averaged
/// over gold tables). Both empty scores 1, exactly one empty scores 0.
double fuzzy_f(const std::set<std::string>& pred,
               const std::set<std::string>& gold);

struct TableMatchBreakdown {
    double exact_f1 = 0.0;
    double fuzzy_f = 0.0;
    double combined = 0.0;
};

/// Table score: w_exact * F1 + w_fuzzy * F_u. The weights must be
/// non-negative and sum to 1 within 1e-9, otherwise InvalidWeights.
TableMatchBreakdown table_score(const std::set<std::string>& pred,
                                const std::set<std::string>& gold,
                                double w_exact, double w_fuzzy);

} // namespace slice

#endif // SLICE_MATCHERS_HPP
