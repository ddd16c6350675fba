#include "slice/report.hpp"

#include "slice/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace slice {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed9(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.9f", value);
    return buffer;
}

std::string sanitize_cell(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::vector<ScoredRecord> score_trial(std::span<const GoldRecord> gold,
                                      const std::map<LineageTask, const PredictionRecord*>& by_task,
                                      const EvaluationConfig& config, int jobs,
                                      std::vector<LineageTask>& missing) {
    std::vector<ScoredRecord> records(gold.size());
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= gold.size()) break;
            const GoldRecord& g = gold[i];
            auto it = by_task.find(g.task);
            if (it == by_task.end()) {
                records[i] = slice_score(g.task, "", g.lineage, config);
                records[i].diagnostic = "missing prediction";
            } else {
                records[i] = slice_score(g.task, it->second->raw_response, g.lineage, config);
                records[i].trial_id = it->second->trial_id;
            }
        }
    };
    int workers = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    for (size_t i = 0; i < gold.size(); ++i) {
        if (!by_task.contains(gold[i].task)) missing.push_back(gold[i].task);
    }
    return records;
}

} // namespace

ScoreReport build_report(std::span<const GoldRecord> gold,
                         std::span<const PredictionRecord> predictions,
                         const EvaluationConfig& config,
                         const std::map<std::string, Difficulty>& difficulty_labels,
                         const std::string& model_label,
                         const std::string& strategy_label, int jobs) {
    config.validate();
    if (gold.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "gold set is empty");
    }

    std::set<LineageTask> gold_tasks;
    for (const GoldRecord& record : gold) gold_tasks.insert(record.task);

    // Group predictions by trial, validating task references.
    std::map<std::string, std::map<LineageTask, const PredictionRecord*>> trials;
    for (const PredictionRecord& prediction : predictions) {
        if (!gold_tasks.contains(prediction.task)) {
            throw Error(ErrorCode::MalformedRecord,
                        "prediction references unknown gold task (" +
                            prediction.task.script_id + ", " +
                            prediction.task.target_schema + ")");
        }
        trials[prediction.trial_id][prediction.task] = &prediction;
    }
    if (trials.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no prediction records");
    }

    ScoreReport report;
    report.model_label = model_label;
    report.strategy_label = strategy_label;
    report.config_json = config_fingerprint(config);
    report.strata_available = !difficulty_labels.empty();

    for (auto& [trial_id, by_task] : trials) {
        TrialReport trial;
        trial.trial_id = trial_id;
        trial.records = score_trial(gold, by_task, config, jobs, trial.missing);
        for (ScoredRecord& record : trial.records) record.trial_id = trial_id;

        std::map<std::string, std::vector<const ScoredRecord*>> by_script;
        for (const ScoredRecord& record : trial.records) {
            by_script[record.task.script_id].push_back(&record);
        }
        std::vector<double> script_values;
        for (const auto& [script_id, script_records] : by_script) {
            double sum = 0.0;
            for (const ScoredRecord* record : script_records) sum += record->slice;
            double mean = sum / static_cast<double>(script_records.size());
            trial.script_scores[script_id] = mean;
            trial.script_counts[script_id] = static_cast<int>(script_records.size());
            script_values.push_back(mean);
        }
        trial.corpus = corpus_score(script_values);
        if (report.strata_available) {
            trial.strata = stratify(trial.script_scores, difficulty_labels);
        }
        report.trials.push_back(std::move(trial));
    }

    std::vector<double> corpus_values;
    for (const TrialReport& trial : report.trials) corpus_values.push_back(trial.corpus);
    report.corpus_stats = trial_stats(corpus_values);

    std::map<std::string, double> script_sums;
    for (const TrialReport& trial : report.trials) {
        for (const auto& [script_id, score] : trial.script_scores) {
            script_sums[script_id] += score;
        }
    }
    for (const auto& [script_id, sum] : script_sums) {
        report.script_means[script_id] = sum / static_cast<double>(report.trials.size());
    }
    if (report.strata_available) {
        std::map<Difficulty, double> sums;
        std::map<Difficulty, int> counts;
        for (const TrialReport& trial : report.trials) {
            for (const auto& [level, score] : trial.strata) {
                sums[level] += score;
                counts[level] += 1;
            }
        }
        for (const auto& [level, sum] : sums) {
            report.strata_means[level] = sum / counts[level];
        }
    }
    return report;
}

std::string render_report_json(const ScoreReport& report) {
    ordered_json doc;
    doc["tool"] = {{"name", "sliceval"}, {"version", "0.1.0"}};
    doc["model"] = report.model_label;
    doc["strategy"] = report.strategy_label;
    doc["config"] = ordered_json::parse(report.config_json);
    doc["std_kind"] = "population";

    ordered_json trials = ordered_json::array();
    for (const TrialReport& trial : report.trials) {
        ordered_json t;
        t["trial_id"] = trial.trial_id;
        t["corpus_score"] = trial.corpus;
        ordered_json scripts = ordered_json::array();
        for (const auto& [script_id, score] : trial.script_scores) {
            scripts.push_back({{"script_id", script_id},
                               {"schema_count", trial.script_counts.at(script_id)},
                               {"score", score}});
        }
        t["scripts"] = scripts;
        ordered_json strata = ordered_json::object();
        for (const auto& [level, score] : trial.strata) {
            strata[std::string(difficulty_name(level))] = score;
        }
        t["strata"] = strata;
        ordered_json missing = ordered_json::array();
        for (const LineageTask& task : trial.missing) {
            missing.push_back({{"script_id", task.script_id},
                               {"target_schema", task.target_schema}});
        }
        t["missing"] = missing;
        trials.push_back(std::move(t));
    }
    doc["trials"] = trials;

    ordered_json summary;
    summary["trial_count"] = report.trials.size();
    summary["corpus_mean"] = report.corpus_stats.mean;
    summary["corpus_std"] = report.corpus_stats.stddev;
    ordered_json script_means = ordered_json::array();
    for (const auto& [script_id, mean] : report.script_means) {
        script_means.push_back({{"script_id", script_id}, {"mean", mean}});
    }
    summary["scripts"] = script_means;
    ordered_json strata = ordered_json::object();
    for (const auto& [level, mean] : report.strata_means) {
        strata[std::string(difficulty_name(level))] = mean;
    }
    summary["strata"] = strata;
    doc["summary"] = summary;
    return doc.dump(2) + "\n";
}

std::string render_records_tsv(const ScoreReport& report) {
    std::string out =
        "trial_id\tscript_id\ttarget_schema\tm_fmt\tm_src\tm_tbl\tm_trf\tm_agg\tslice\t"
        "tbl_exact_f1\ttbl_fuzzy_f\ttrf_bleu\ttrf_weighted_bleu\ttrf_ast\t"
        "agg_bleu\tagg_weighted_bleu\tagg_ast\tdiagnostic\n";
    for (const TrialReport& trial : report.trials) {
        for (const ScoredRecord& r : trial.records) {
            out += trial.trial_id;
            out += '\t';
            out += sanitize_cell(r.task.script_id);
            out += '\t';
            out += sanitize_cell(r.task.target_schema);
            out += '\t';
            out += std::to_string(r.m_fmt);
            out += '\t';
            out += std::to_string(r.m_src);
            for (double v : {r.m_tbl, r.m_trf, r.m_agg, r.slice, r.table.exact_f1,
                             r.table.fuzzy_f, r.transformation.bleu,
                             r.transformation.weighted_bleu, r.transformation.ast_multi,
                             r.aggregation.bleu, r.aggregation.weighted_bleu,
                             r.aggregation.ast_multi}) {
                out += '\t';
                out += fixed9(v);
            }
            out += '\t';
            out += sanitize_cell(r.diagnostic);
            out += '\n';
        }
    }
    return out;
}

std::string render_summary_text(const ScoreReport& report) {
    std::ostringstream out;
    out << "model: " << report.model_label << "\n";
    out << "strategy: " << report.strategy_label << "\n";
    out << "trials: " << report.trials.size() << "\n";
    out << "corpus mean: " << fixed9(report.corpus_stats.mean) << "\n";
    out << "corpus std (population): " << fixed9(report.corpus_stats.stddev) << "\n\n";

    out << "script                         schemas  mean\n";
    for (const auto& [script_id, mean] : report.script_means) {
        int count = report.trials.front().script_counts.contains(script_id)
                        ? report.trials.front().script_counts.at(script_id)
                        : 0;
        char line[128];
        std::snprintf(line, sizeof(line), "%-30s %7d  %s\n", script_id.c_str(), count,
                      fixed9(mean).c_str());
        out << line;
    }
    if (!report.strata_means.empty()) {
        out << "\ndifficulty  mean\n";
        for (const auto& [level, mean] : report.strata_means) {
            char line[64];
            std::snprintf(line, sizeof(line), "%-10s  %s\n",
                          std::string(difficulty_name(level)).c_str(), fixed9(mean).c_str());
            out << line;
        }
    }
    return out.str();
}

void write_report_files(const ScoreReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());
    }
    auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write " + (out_dir / name).string());
        }
        out << content;
    };
    write("report.json", render_report_json(report));
    write("records.tsv", render_records_tsv(report));
    write("summary.txt", render_summary_text(report));
}

ReportSummary load_report_summary(const std::filesystem::path& report_json) {
    std::ifstream in(report_json);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open report " + report_json.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord,
                    report_json.string() + " is not valid JSON: " + e.what());
    }
    ReportSummary summary;
    try {
        summary.model_label = doc.at("model").get<std::string>();
        summary.strategy_label = doc.at("strategy").get<std::string>();
        summary.config_json = doc.at("config").dump();
        summary.mean = doc.at("summary").at("corpus_mean").get<double>();
        summary.stddev = doc.at("summary").at("corpus_std").get<double>();
        for (const auto& [name, value] : doc.at("summary").at("strata").items()) {
            summary.strata[parse_difficulty(name)] = value.get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord,
                    report_json.string() + ": missing report field: " + e.what());
    }
    return summary;
}

std::string render_model_strategy_table(const std::vector<ReportSummary>& rows) {
    for (const ReportSummary& row : rows) {
        if (nlohmann::json::parse(row.config_json) !=
            nlohmann::json::parse(rows.front().config_json)) {
            throw Error(ErrorCode::IncompatibleReports,
                        "reports were produced with different weight configurations");
        }
    }
    std::set<std::string> strategies;
    std::set<std::string> models;
    std::map<std::pair<std::string, std::string>, const ReportSummary*> cells;
    for (const ReportSummary& row : rows) {
        strategies.insert(row.strategy_label);
        models.insert(row.model_label);
        cells[{row.model_label, row.strategy_label}] = &row;
    }

    std::string out = "model";
    for (const std::string& strategy : strategies) {
        out += '\t';
        out += strategy;
    }
    out += '\n';
    for (const std::string& model : models) {
        out += model;
        for (const std::string& strategy : strategies) {
            out += '\t';
            auto it = cells.find({model, strategy});
            if (it == cells.end()) {
                out += "-";
            } else {
                out += fixed9(it->second->mean) + " +/- " + fixed9(it->second->stddev);
            }
        }
        out += '\n';
    }
    return out;
}

std::string render_difficulty_series(const ReportSummary& row) {
    std::string out = "difficulty\tmean\n";
    for (const auto& [level, mean] : row.strata) {
        out += std::string(difficulty_name(level)) + "\t" + fixed9(mean) + "\n";
    }
    return out;
}

} // namespace slice
