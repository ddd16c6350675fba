#ifndef SLICE_CODESIM_HPP
#define SLICE_CODESIM_HPP

#include "slice/ast.hpp"
#include "slice/lexicon.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slice {

/// Corpus BLEU between two snippet sequences. Each side is joined with the
/// canonical " <CODEEND> " separator and tokenized; the n-gram order is
/// min(4, gold token count) with uniform weights and the standard brevity
/// penalty, unsmoothed. Identical inputs score exactly 1; both sides empty
/// scores 1; exactly one side empty scores 0.
double bleu(const std::vector<std::string>& pred_snippets,
            const std::vector<std::string>& gold_snippets);

/// BLEU variant where unigram matches are weighted: tokens found in any
/// keyword lexicon weigh 5, all others weigh 1. Higher-order n-grams are
/// unweighted. Empty-side conventions match bleu().
double weighted_bleu(const std::vector<std::string>& pred_snippets,
                     const std::vector<std::string>& gold_snippets,
                     const LexiconSet& lexicons);

/// Language attribution: per-language keyword hit counts over the token
/// stream, normalized to sum to 1. Zero hits yields uniform weights over
/// the candidate languages.
std::map<Language, double> language_weights(std::string_view text,
                                            const LexiconSet& lexicons);

/// Language-weighted AST similarity: weights computed on the gold text,
/// applied to per-language ast_similarity values.
double multi_ast(std::string_view pred, std::string_view gold,
                 const LexiconSet& lexicons);

struct CodeScoreBreakdown {
    double bleu = 0.0;
    double weighted_bleu = 0.0;
    double ast_multi = 0.0;
    std::map<Language, double> language_weights;
    double combined = 0.0;
};

/// Mixture score for one transformation or aggregation field:
/// w1 * BLEU + w2 * weighted BLEU + w3 * multi-AST, with the weights
/// non-negative and summing to 1 within 1e-9 (otherwise InvalidWeights).
///
/// Snippet sequences are joined into one text per field before scoring.
/// All functions here build their parser state per call and are safe to use
/// from any number of workers; returned breakdowns are plain data.
CodeScoreBreakdown component_code_score(const std::vector<std::string>& pred_snippets,
                                        const std::vector<std::string>& gold_snippets,
                                        double w_bleu, double w_weighted, double w_ast,
                                        const LexiconSet& lexicons);

} // namespace slice

#endif // SLICE_CODESIM_HPP
