#include "slice/cli.hpp"

#include "slice/client.hpp"
#include "slice/config.hpp"
#include "slice/corpus.hpp"
#include "slice/errors.hpp"
#include "slice/prompt.hpp"
#include "slice/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

namespace slice {

namespace {

int default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    return static_cast<int>(std::min(n, 8u));
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

/// Difficulty labels per script: declared label wins, then declared
/// features, then the feature heuristics.
std::map<std::string, Difficulty> difficulty_labels(const Corpus& corpus) {
    std::map<std::string, Difficulty> labels;
    for (const CorpusScript& entry : corpus.scripts) {
        const PipelineScript& script = entry.script;
        if (script.difficulty.has_value()) {
            labels[script.script_id] = *script.difficulty;
        } else if (script.features.has_value()) {
            labels[script.script_id] = difficulty_level(script.features);
        } else {
            labels[script.script_id] = difficulty_level(detect_features(script));
        }
    }
    return labels;
}

struct ScoreArgs {
    std::string gold_path;
    std::vector<std::string> pred_paths;
    std::string config_path;
    std::string corpus_path;
    std::string out_dir;
    std::string model_label = "model";
    std::string strategy_label = "strategy";
    int jobs = default_jobs();
    bool strict = false;
    bool lenient = false;
};

int cmd_score(const ScoreArgs& args) {
    EvaluationConfig config;
    if (!args.config_path.empty()) {
        config = load_config(args.config_path);
    }
    if (args.strict) config.dict_syntax = DictSyntax::strict;
    if (args.lenient) config.dict_syntax = DictSyntax::lenient;
    config.validate();

    std::vector<GoldRecord> gold = load_gold(args.gold_path);
    std::vector<PredictionRecord> predictions;
    for (const std::string& path : args.pred_paths) {
        std::vector<PredictionRecord> chunk = load_predictions(path);
        predictions.insert(predictions.end(), std::make_move_iterator(chunk.begin()),
                           std::make_move_iterator(chunk.end()));
    }

    std::map<std::string, Difficulty> labels;
    if (!args.corpus_path.empty()) {
        labels = difficulty_labels(load_corpus(args.corpus_path));
    }

    ScoreReport report = build_report(gold, predictions, config, labels,
                                      args.model_label, args.strategy_label, args.jobs);
    write_report_files(report, args.out_dir);

    // Run manifest carries the volatile bits (paths, timestamp) so the
    // report files themselves stay byte-reproducible.
    nlohmann::ordered_json manifest;
    manifest["tool_version"] = "0.1.0";
    manifest["emitted_at"] = utc_timestamp();
    manifest["config"] = args.config_path.empty() ? "<defaults>" : args.config_path;
    manifest["gold"] = args.gold_path;
    manifest["predictions"] = args.pred_paths;
    manifest["corpus"] = args.corpus_path;
    std::ofstream mf(std::filesystem::path(args.out_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";

    std::cout << render_summary_text(report);
    return 0;
}

int cmd_report(const std::vector<std::string>& report_paths, const std::string& out_dir) {
    std::vector<ReportSummary> rows;
    for (const std::string& path : report_paths) {
        rows.push_back(load_report_summary(path));
    }
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(std::filesystem::path(out_dir) / "model_strategy_table.tsv",
                          std::ios::binary);
        out << render_model_strategy_table(rows);
    }
    for (const ReportSummary& row : rows) {
        std::string name = "series_" + row.model_label + "__" + row.strategy_label + ".tsv";
        for (char& c : name) {
            if (c == '/' || c == ' ') c = '_';
        }
        std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
        out << render_difficulty_series(row);
    }
    std::cout << "wrote " << (rows.size() + 1) << " file(s) to " << out_dir << "\n";
    return 0;
}

int cmd_validate(const std::string& gold_path) {
    std::ifstream in(gold_path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open gold file " + gold_path);
    }
    size_t line_number = 0;
    size_t finding_count = 0;
    std::set<LineageTask> seen;
    std::string line;
    auto report = [&](const std::string& message) {
        std::cout << gold_path << ":" << line_number << ": " << message << "\n";
        ++finding_count;
    };
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            report("line is not a JSON object");
            continue;
        }
        if (!doc.contains("script_id") || !doc["script_id"].is_string() ||
            !doc.contains("target_schema") || !doc["target_schema"].is_string()) {
            report("missing script_id/target_schema");
            continue;
        }
        if (!doc.contains("lineage") || !doc["lineage"].is_object()) {
            report("missing lineage object");
            continue;
        }
        LineageTask task{doc["script_id"].get<std::string>(),
                         doc["target_schema"].get<std::string>()};
        if (!seen.insert(task).second) {
            report("duplicate task (" + task.script_id + ", " + task.target_schema + ")");
        }
        try {
            SchemaLineage lineage = parse_lineage_dict(doc["lineage"].dump());
            for (const std::string& finding : lineage_findings(lineage)) {
                report(finding);
            }
        } catch (const Error& e) {
            report(e.what());
        }
    }
    std::cout << finding_count << " finding(s)\n";
    return finding_count == 0 ? 0 : 1;
}

int cmd_prompt(const std::string& corpus_path, const std::string& strategy_name_arg,
               const std::string& out_dir) {
    Corpus corpus = load_corpus(corpus_path);
    Strategy strategy = parse_strategy(strategy_name_arg);
    std::filesystem::create_directories(out_dir);

    int failures = 0;
    for (const CorpusScript& entry : corpus.scripts) {
        const int arity = strategy_arity(strategy);
        PromptSpec spec;
        spec.strategy = strategy;
        spec.script_text = entry.script.full_text();
        int available_examples = static_cast<int>(entry.examples.size());
        int available_traces = static_cast<int>(entry.traces.size());
        spec.examples.assign(entry.examples.begin(),
                             entry.examples.begin() + std::min(arity, available_examples));
        if (strategy_expects_reasoning(strategy)) {
            spec.traces.assign(entry.traces.begin(),
                               entry.traces.begin() + std::min(arity, available_traces));
        }
        try {
            std::string prompt = build_prompt(spec);
            std::string name = entry.script.script_id + "." +
                               std::string(strategy_name(strategy)) + ".prompt.txt";
            std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
            out << prompt;
        } catch (const Error& e) {
            std::cerr << entry.script.script_id << ": " << e.what() << "\n";
            ++failures;
        }
    }
    std::cout << (corpus.scripts.size() - failures) << " prompt(s) written to " << out_dir
              << "\n";
    return failures == 0 ? 0 : exit_class(ErrorCode::ArityMismatch);
}

int cmd_difficulty(const std::string& corpus_path) {
    Corpus corpus = load_corpus(corpus_path);
    for (const CorpusScript& entry : corpus.scripts) {
        const PipelineScript& script = entry.script;
        ScriptFeatures features =
            script.features ? *script.features : detect_features(script);
        Difficulty level =
            script.difficulty ? *script.difficulty : difficulty_level(features);
        std::cout << script.script_id << "\t" << difficulty_name(level) << "\t"
                  << "sources=" << features.source_count
                  << " chain=" << (features.transformation_chain ? "yes" : "no")
                  << " aggregation=" << (features.aggregation ? "yes" : "no")
                  << (script.features ? " (declared)" : " (detected)") << "\n";
    }
    return 0;
}

struct ExtractArgs {
    std::string corpus_path;
    std::string gold_path;
    std::string strategy;
    std::string endpoint_path;
    std::string trial_id = "trial-1";
    uint64_t seed = 0;
    int jobs = 4;
    std::string out_path;
};

int cmd_extract(const ExtractArgs& args) {
    Corpus corpus = load_corpus(args.corpus_path);
    std::vector<GoldRecord> gold = load_gold(args.gold_path);
    EndpointConfig endpoint = load_endpoint_config(args.endpoint_path);
    ExtractionOptions options;
    options.trial_id = args.trial_id;
    options.seed = args.seed;
    options.workers = args.jobs;

    std::vector<PredictionRecord> records =
        run_extraction(corpus, gold, parse_strategy(args.strategy), endpoint, options);
    write_predictions(args.out_path, records);

    nlohmann::ordered_json meta;
    meta["trial_id"] = args.trial_id;
    meta["seed"] = args.seed;
    meta["strategy"] = args.strategy;
    meta["model"] = endpoint.model;
    meta["temperature"] = endpoint.temperature;
    meta["max_tokens"] = endpoint.max_tokens;
    meta["emitted_at"] = utc_timestamp();
    std::ofstream mf(args.out_path + ".meta.json");
    mf << meta.dump(2) << "\n";

    std::cout << records.size() << " prediction(s) written to " << args.out_path << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"schema lineage scoring toolkit"};
    app.require_subcommand(1);

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand("score", "score predictions against gold");
    score->add_option("--gold", score_args.gold_path, "gold records (jsonl)")->required();
    score->add_option("--pred", score_args.pred_paths, "prediction records, one per trial")
        ->required();
    score->add_option("--config", score_args.config_path, "metric config (json)");
    score->add_option("--corpus", score_args.corpus_path, "corpus manifest for strata");
    score->add_option("--out", score_args.out_dir, "output directory")->required();
    score->add_option("--jobs", score_args.jobs, "scoring worker count");
    score->add_option("--model-label", score_args.model_label, "model name for reports");
    score->add_option("--strategy-label", score_args.strategy_label,
                      "strategy name for reports");
    CLI::Option* strict = score->add_flag("--strict", score_args.strict,
                                          "strict dictionary parsing");
    score->add_flag("--lenient", score_args.lenient, "lenient dictionary parsing")
        ->excludes(strict);

    std::vector<std::string> report_paths;
    std::string report_out;
    CLI::App* report = app.add_subcommand("report", "combine score reports into tables");
    report->add_option("reports", report_paths, "report.json files")->required();
    report->add_option("--out", report_out, "output directory")->required();

    std::string validate_gold;
    CLI::App* validate = app.add_subcommand("validate", "check gold record invariants");
    validate->add_option("--gold", validate_gold, "gold records (jsonl)")->required();

    std::string prompt_corpus, prompt_strategy, prompt_out;
    CLI::App* prompt = app.add_subcommand("prompt", "render per-script prompts");
    prompt->add_option("--corpus", prompt_corpus, "corpus manifest")->required();
    prompt->add_option("--strategy", prompt_strategy, "prompting strategy")->required();
    prompt->add_option("--out", prompt_out, "output directory")->required();

    std::string difficulty_corpus;
    CLI::App* difficulty = app.add_subcommand("difficulty", "classify script difficulty");
    difficulty->add_option("--corpus", difficulty_corpus, "corpus manifest")->required();

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "run extraction against an endpoint");
    extract->add_option("--corpus", extract_args.corpus_path, "corpus manifest")->required();
    extract->add_option("--gold", extract_args.gold_path, "gold records (jsonl)")->required();
    extract->add_option("--strategy", extract_args.strategy, "prompting strategy")
        ->required();
    extract->add_option("--endpoint", extract_args.endpoint_path, "endpoint config (json)")
        ->required();
    extract->add_option("--trial-id", extract_args.trial_id, "trial identifier");
    extract->add_option("--seed", extract_args.seed, "sampling seed");
    extract->add_option("--jobs", extract_args.jobs, "request worker count");
    extract->add_option("--out", extract_args.out_path, "output predictions file")
        ->required();

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv;
    argv.push_back("slice");
    for (const std::string& arg : argv_storage) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (score->parsed()) return cmd_score(score_args);
        if (report->parsed()) return cmd_report(report_paths, report_out);
        if (validate->parsed()) return cmd_validate(validate_gold);
        if (prompt->parsed()) return cmd_prompt(prompt_corpus, prompt_strategy, prompt_out);
        if (difficulty->parsed()) return cmd_difficulty(difficulty_corpus);
        if (extract->parsed()) return cmd_extract(extract_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_class(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace slice
