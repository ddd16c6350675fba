#ifndef SLICE_REPORT_HPP
#define SLICE_REPORT_HPP

#include "slice/config.hpp"
#include "slice/corpus.hpp"
#include "slice/scoring.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slice {

/// Scores and aggregates for one trial (one full pass over the corpus).
struct TrialReport {
    std::string trial_id;
    std::vector<ScoredRecord> records; // gold order
    std::map<std::string, double> script_scores;
    std::map<std::string, int> script_counts;
    double corpus = 0.0;
    std::map<Difficulty, double> strata;
    std::vector<LineageTask> missing; // gold tasks with no prediction
};

struct ScoreReport {
    std::string model_label;
    std::string strategy_label;
    std::string config_json; // fingerprint of the active configuration
    std::vector<TrialReport> trials; // sorted by trial_id
    TrialStats corpus_stats;
    std::map<std::string, double> script_means;
    std::map<Difficulty, double> strata_means;
    bool strata_available = false;
};

/// Scores every gold task against the predictions of each trial and
/// aggregates to script, corpus, strata, and trial level. Gold tasks with
/// no prediction in a trial are scored as empty responses (composite 0) and
/// listed as missing. Difficulty labels, when provided, come from declared
/// corpus metadata. Records are scored on `jobs` worker threads; outputs
/// are fully deterministic for identical inputs.
ScoreReport build_report(std::span<const GoldRecord> gold,
                         std::span<const PredictionRecord> predictions,
                         const EvaluationConfig& config,
                         const std::map<std::string, Difficulty>& difficulty_labels,
                         const std::string& model_label,
                         const std::string& strategy_label, int jobs);

std::string render_report_json(const ScoreReport& report);
std::string render_records_tsv(const ScoreReport& report);
std::string render_summary_text(const ScoreReport& report);

/// Writes report.json, records.tsv, and summary.txt into the directory
/// (created when absent). The run manifest with its timestamp is written
/// separately so report bytes stay reproducible.
void write_report_files(const ScoreReport& report, const std::filesystem::path& out_dir);

/// Summary row parsed back from a written report.json.
struct ReportSummary {
    std::string model_label;
    std::string strategy_label;
    std::string config_json;
    double mean = 0.0;
    double stddev = 0.0;
    std::map<Difficulty, double> strata;
};

ReportSummary load_report_summary(const std::filesystem::path& report_json);

/// Table 2-shaped model x strategy table (mean +/- std per cell).
std::string render_model_strategy_table(const std::vector<ReportSummary>& rows);

/// Per-difficulty series, one row per level, for one summary.
std::string render_difficulty_series(const ReportSummary& row);

} // namespace slice

#endif // SLICE_REPORT_HPP
