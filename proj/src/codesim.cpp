#include "slice/codesim.hpp"

#include "slice/errors.hpp"
#include "slice/lineage.hpp"
#include "slice/tokenizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace slice {

namespace {

std::vector<std::string> field_tokens(const std::vector<std::string>& snippets) {
    return tokenize_code(join_snippet_field(snippets));
}

std::string join_ngram(const std::vector<std::string>& tokens, size_t start, size_t n) {
    std::string key;
    for (size_t k = 0; k < n; ++k) {
        if (k > 0) key.push_back('\x1f');
        key += tokens[start + k];
    }
    return key;
}

/// Shared BLEU core. unigram_weight is applied to order-1 counts only; pass
/// nullptr for standard BLEU.
double bleu_core(const std::vector<std::string>& pred,
                 const std::vector<std::string>& gold,
                 const std::function<double(const std::string&)>* unigram_weight) {
    if (pred.empty() && gold.empty()) return 1.0;
    if (pred.empty() || gold.empty()) return 0.0;

    const size_t order = std::min<size_t>(4, gold.size());
    double log_precision_sum = 0.0;
    for (size_t n = 1; n <= order; ++n) {
        if (pred.size() < n) return 0.0;

        std::unordered_map<std::string, int> gold_counts;
        for (size_t i = 0; i + n <= gold.size(); ++i) {
            gold_counts[join_ngram(gold, i, n)] += 1;
        }
        std::unordered_map<std::string, int> pred_counts;
        for (size_t i = 0; i + n <= pred.size(); ++i) {
            pred_counts[join_ngram(pred, i, n)] += 1;
        }

        double matched = 0.0;
        double total = 0.0;
        for (const auto& [ngram, count] : pred_counts) {
            auto it = gold_counts.find(ngram);
            int clipped = (it == gold_counts.end()) ? 0 : std::min(count, it->second);
            double weight = 1.0;
            if (n == 1 && unigram_weight != nullptr) {
                weight = (*unigram_weight)(ngram);
            }
            matched += weight * clipped;
            total += weight * count;
        }
        if (matched <= 0.0 || total <= 0.0) return 0.0;
        log_precision_sum += std::log(matched / total);
    }

    double brevity = 1.0;
    if (pred.size() < gold.size()) {
        brevity = std::exp(1.0 - static_cast<double>(gold.size()) /
                                     static_cast<double>(pred.size()));
    }
    return brevity * std::exp(log_precision_sum / static_cast<double>(order));
}

} // namespace

double bleu(const std::vector<std::string>& pred_snippets,
            const std::vector<std::string>& gold_snippets) {
    return bleu_core(field_tokens(pred_snippets), field_tokens(gold_snippets), nullptr);
}

double weighted_bleu(const std::vector<std::string>& pred_snippets,
                     const std::vector<std::string>& gold_snippets,
                     const LexiconSet& lexicons) {
    std::function<double(const std::string&)> weight = [&](const std::string& token) {
        return is_any_keyword(token, lexicons) ? 5.0 : 1.0;
    };
    return bleu_core(field_tokens(pred_snippets), field_tokens(gold_snippets), &weight);
}

std::map<Language, double> language_weights(std::string_view text,
                                            const LexiconSet& lexicons) {
    std::map<Language, double> weights;
    std::map<Language, int> hits;
    for (const LanguageLexicon& lexicon : lexicons) {
        hits[lexicon.language] = 0;
    }
    int total = 0;
    for (const std::string& token : tokenize_code(text)) {
        for (const LanguageLexicon& lexicon : lexicons) {
            if (lexicon.contains(token)) {
                hits[lexicon.language] += 1;
                ++total;
            }
        }
    }
    if (total == 0) {
        double uniform = 1.0 / static_cast<double>(hits.size());
        for (const auto& [language, _] : hits) weights[language] = uniform;
        return weights;
    }
    for (const auto& [language, count] : hits) {
        weights[language] = static_cast<double>(count) / static_cast<double>(total);
    }
    return weights;
}

double multi_ast(std::string_view pred, std::string_view gold,
                 const LexiconSet& lexicons) {
    auto weights = language_weights(gold, lexicons);
    double score = 0.0;
    for (const auto& [language, weight] : weights) {
        if (weight <= 0.0) continue;
        score += weight * ast_similarity(pred, gold, language);
    }
    return score;
}

CodeScoreBreakdown component_code_score(const std::vector<std::string>& pred_snippets,
                                        const std::vector<std::string>& gold_snippets,
                                        double w_bleu, double w_weighted, double w_ast,
                                        const LexiconSet& lexicons) {
    if (w_bleu < -1e-9 || w_weighted < -1e-9 || w_ast < -1e-9 ||
        std::abs(w_bleu + w_weighted + w_ast - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights,
                    "code score weights must be non-negative and sum to 1");
    }
    CodeScoreBreakdown breakdown;
    breakdown.bleu = bleu(pred_snippets, gold_snippets);
    breakdown.weighted_bleu = weighted_bleu(pred_snippets, gold_snippets, lexicons);

    std::string pred_text = join_snippet_field(pred_snippets);
    std::string gold_text = join_snippet_field(gold_snippets);
    breakdown.language_weights = language_weights(gold_text, lexicons);
    if (pred_text.empty() && gold_text.empty()) {
        breakdown.ast_multi = 1.0;
    } else if (pred_text.empty() || gold_text.empty()) {
        breakdown.ast_multi = 0.0;
    } else {
        double score = 0.0;
        for (const auto& [language, weight] : breakdown.language_weights) {
            if (weight <= 0.0) continue;
            score += weight * ast_similarity(pred_text, gold_text, language);
        }
        breakdown.ast_multi = score;
    }
    breakdown.combined = w_bleu * breakdown.bleu + w_weighted * breakdown.weighted_bleu +
                         w_ast * breakdown.ast_multi;
    return breakdown;
}

} // namespace slice
