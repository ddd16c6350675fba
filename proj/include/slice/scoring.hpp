#ifndef SLICE_SCORING_HPP
#define SLICE_SCORING_HPP

#include "slice/codesim.hpp"
#include "slice/lexicon.hpp"
#include "slice/lineage.hpp"
#include "slice/matchers.hpp"
#include "slice/response.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slice {

enum class Difficulty { easy, medium, hard };

std::string_view difficulty_name(Difficulty level);
Difficulty parse_difficulty(std::string_view name); // throws UnlabeledScript

/// Mixture weights for one code component (transformation or aggregation).
struct ComponentWeights {
    double bleu = 0.5;
    double weighted_bleu = 0.3;
    double ast = 0.2;
};

/// Full metric configuration. Shipped defaults reproduce the reference
/// weight assignment: table 0.7/0.3, transformation and aggregation
/// 0.5/0.3/0.2, composite 0.4/0.4/0.2.
struct EvaluationConfig {
    double table_exact_weight = 0.7;
    double table_fuzzy_weight = 0.3;
    ComponentWeights transformation;
    ComponentWeights aggregation;
    double omega_table = 0.4;
    double omega_transformation = 0.4;
    double omega_aggregation = 0.2;
    ResponseMode mode = ResponseMode::answer_only;
    DictSyntax dict_syntax = DictSyntax::strict;
    LexiconSet lexicons = builtin_lexicons();

    /// Throws InvalidWeights unless every weight is non-negative and each
    /// group sums to 1 within 1e-9.
    void validate() const;
};

/// Per-schema score record: the five components plus the gated composite.
struct ScoredRecord {
    LineageTask task;
    std::string trial_id;
    int m_fmt = 0;
    int m_src = 0;
    double m_tbl = 0.0;
    double m_trf = 0.0;
    double m_agg = 0.0;
    double slice = 0.0;
    TableMatchBreakdown table;
    CodeScoreBreakdown transformation;
    CodeScoreBreakdown aggregation;
    std::string diagnostic;
};

/// The composite formula on fixed component values:
/// m_fmt * m_src * (omega_tbl * m_tbl + omega_trf * m_trf + omega_agg * m_agg).
double composite_slice(int m_fmt, int m_src, double m_tbl, double m_trf,
                       double m_agg, const EvaluationConfig& config);

/// Scores one raw response against a gold lineage. All component scores are
/// populated for diagnostics whenever a lineage could be parsed, even when
/// the format or source gate zeroes the composite. Never throws on bad
/// responses; failures become scores with a diagnostic reason.
ScoredRecord slice_score(const LineageTask& task, std::string_view raw_response,
                         const SchemaLineage& gold, const EvaluationConfig& config);

/// Mean composite over one script's records (callers group by script_id).
/// Throws EmptyScript on an empty span.
double script_score(std::span<const ScoredRecord> records);

/// Unweighted mean over script scores. Throws EmptyCorpus on empty input.
double corpus_score(std::span<const double> script_scores);

/// Per-difficulty unweighted means of script scores. Levels with no script
/// are absent from the result. Throws UnlabeledScript when a script has no
/// label.
std::map<Difficulty, double> stratify(const std::map<std::string, double>& script_scores,
                                      const std::map<std::string, Difficulty>& labels);

struct TrialStats {
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation; 0 for one trial
};

TrialStats trial_stats(std::span<const double> corpus_scores);

} // namespace slice

#endif // SLICE_SCORING_HPP
