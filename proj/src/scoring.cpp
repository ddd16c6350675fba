#include "slice/scoring.hpp"

#include "slice/errors.hpp"

#include <cmath>
#include <numeric>

namespace slice {

std::string_view difficulty_name(Difficulty level) {
    switch (level) {
    case Difficulty::easy: return "easy";
    case Difficulty::medium: return "medium";
    case Difficulty::hard: return "hard";
    }
    return "unknown";
}

Difficulty parse_difficulty(std::string_view name) {
    if (name == "easy") return Difficulty::easy;
    if (name == "medium") return Difficulty::medium;
    if (name == "hard") return Difficulty::hard;
    throw Error(ErrorCode::UnlabeledScript,
                "unknown difficulty label \"" + std::string(name) + "\"");
}

namespace {

void check_sum(std::initializer_list<double> weights, const char* group) {
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-9) {
            throw Error(ErrorCode::InvalidWeights,
                        std::string(group) + " weights must be non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights,
                    std::string(group) + " weights must sum to 1");
    }
}

} // namespace

void EvaluationConfig::validate() const {
    check_sum({table_exact_weight, table_fuzzy_weight}, "table");
    check_sum({transformation.bleu, transformation.weighted_bleu, transformation.ast},
              "transformation");
    check_sum({aggregation.bleu, aggregation.weighted_bleu, aggregation.ast},
              "aggregation");
    check_sum({omega_table, omega_transformation, omega_aggregation}, "composite");
    if (lexicons.empty()) {
        throw Error(ErrorCode::ConfigError, "no lexicons configured");
    }
}

double composite_slice(int m_fmt, int m_src, double m_tbl, double m_trf,
                       double m_agg, const EvaluationConfig& config) {
    return static_cast<double>(m_fmt) * static_cast<double>(m_src) *
           (config.omega_table * m_tbl + config.omega_transformation * m_trf +
            config.omega_aggregation * m_agg);
}

ScoredRecord slice_score(const LineageTask& task, std::string_view raw_response,
                         const SchemaLineage& gold, const EvaluationConfig& config) {
    ScoredRecord record;
    record.task = task;

    ModelResponse response = format_score(raw_response, config.mode, config.dict_syntax);
    record.m_fmt = response.format_ok;
    record.diagnostic = response.diagnostic;

    if (response.lineage.has_value()) {
        const SchemaLineage& pred = *response.lineage;
        record.m_src = source_schema_score(pred.source_schema, gold.source_schema);
        record.table = table_score(pred.source_table, gold.source_table,
                                   config.table_exact_weight, config.table_fuzzy_weight);
        record.m_tbl = record.table.combined;
        record.transformation = component_code_score(
            pred.transformation, gold.transformation, config.transformation.bleu,
            config.transformation.weighted_bleu, config.transformation.ast,
            config.lexicons);
        record.m_trf = record.transformation.combined;
        record.aggregation = component_code_score(
            pred.aggregation, gold.aggregation, config.aggregation.bleu,
            config.aggregation.weighted_bleu, config.aggregation.ast, config.lexicons);
        record.m_agg = record.aggregation.combined;
    } else if (record.diagnostic.empty()) {
        record.diagnostic = "no parsed lineage";
    }

    record.slice = composite_slice(record.m_fmt, record.m_src, record.m_tbl,
                                   record.m_trf, record.m_agg, config);
    return record;
}

double script_score(std::span<const ScoredRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::EmptyScript, "no records for script");
    }
    double sum = 0.0;
    for (const ScoredRecord& record : records) sum += record.slice;
    return sum / static_cast<double>(records.size());
}

double corpus_score(std::span<const double> script_scores) {
    if (script_scores.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no script scores");
    }
    double sum = std::accumulate(script_scores.begin(), script_scores.end(), 0.0);
    return sum / static_cast<double>(script_scores.size());
}

std::map<Difficulty, double> stratify(const std::map<std::string, double>& script_scores,
                                      const std::map<std::string, Difficulty>& labels) {
    std::map<Difficulty, double> sums;
    std::map<Difficulty, int> counts;
    for (const auto& [script_id, score] : script_scores) {
        auto it = labels.find(script_id);
        if (it == labels.end()) {
            throw Error(ErrorCode::UnlabeledScript,
                        "script \"" + script_id + "\" has no difficulty label");
        }
        sums[it->second] += score;
        counts[it->second] += 1;
    }
    std::map<Difficulty, double> means;
    for (const auto& [level, sum] : sums) {
        means[level] = sum / counts[level];
    }
    return means;
}

TrialStats trial_stats(std::span<const double> corpus_scores) {
    TrialStats stats;
    if (corpus_scores.empty()) return stats;
    double sum = std::accumulate(corpus_scores.begin(), corpus_scores.end(), 0.0);
    stats.mean = sum / static_cast<double>(corpus_scores.size());
    if (corpus_scores.size() < 2) return stats;
    double sq = 0.0;
    for (double score : corpus_scores) {
        double d = score - stats.mean;
        sq += d * d;
    }
    stats.stddev = std::sqrt(sq / static_cast<double>(corpus_scores.size()));
    return stats;
}

} // namespace slice
