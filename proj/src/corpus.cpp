#include "slice/corpus.hpp"

#include "slice/errors.hpp"
#include "slice/tokenizer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace slice {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json_line(const std::string& line, const std::filesystem::path& path,
                     size_t line_number) {
    try {
        json doc = json::parse(line);
        if (!doc.is_object()) {
            throw Error(ErrorCode::MalformedRecord,
                        path.string() + ":" + std::to_string(line_number) +
                            ": record is not an object");
        }
        return doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedRecord,
                    path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
}

std::string require_string(const json& doc, const char* key,
                           const std::filesystem::path& path, size_t line_number) {
    if (!doc.contains(key) || !doc[key].is_string()) {
        throw Error(ErrorCode::MalformedRecord,
                    path.string() + ":" + std::to_string(line_number) +
                        ": missing string field \"" + key + "\"");
    }
    return doc[key].get<std::string>();
}

} // namespace

std::string PipelineScript::full_text() const {
    std::string out;
    for (size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) {
            out += "\n";
            out += kSegmentDelimiter;
            out += "\n";
        }
        out += segments[i].text;
    }
    return out;
}

PipelineScript parse_multilang_script(std::string_view raw) {
    PipelineScript script;
    std::vector<std::string> pieces;
    std::string current;
    size_t start = 0;
    auto flush_line = [&](std::string_view line) {
        if (trim(line) == kSegmentDelimiter) {
            pieces.push_back(current);
            current.clear();
        } else {
            current += line;
            current += '\n';
        }
    };
    while (start <= raw.size()) {
        size_t nl = raw.find('\n', start);
        if (nl == std::string_view::npos) {
            flush_line(raw.substr(start));
            break;
        }
        flush_line(raw.substr(start, nl - start));
        start = nl + 1;
    }
    pieces.push_back(current);

    for (const std::string& piece : pieces) {
        std::string_view trimmed = trim(piece);
        if (trimmed.empty()) continue;
        script.segments.push_back({std::nullopt, std::string(trimmed)});
    }
    if (script.segments.empty()) {
        throw Error(ErrorCode::EmptyScript, "script has no non-empty segments");
    }
    return script;
}

Difficulty difficulty_level(const std::optional<ScriptFeatures>& features) {
    if (!features.has_value()) {
        throw Error(ErrorCode::MissingFeatures, "script has no declared features");
    }
    int score = (features->source_count >= 3 ? 1 : 0) +
                (features->transformation_chain ? 1 : 0) +
                (features->aggregation ? 1 : 0);
    if (score <= 1) return Difficulty::easy;
    if (score == 2) return Difficulty::medium;
    return Difficulty::hard;
}

namespace {

bool equals_ci(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(a[i])) !=
            std::toupper(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

bool is_aggregate_word(std::string_view word) {
    static const char* names[] = {"SUM", "COUNT", "AVG",  "MIN",
                                  "MAX", "PIVOT", "MEAN", "agg"};
    for (const char* name : names) {
        if (equals_ci(word, name)) return true;
    }
    return false;
}

} // namespace

ScriptFeatures detect_features(const PipelineScript& script) {
    ScriptFeatures features;
    std::set<std::string> file_sources;
    std::set<std::string> table_sources;
    std::set<std::string> assigned;
    bool chain = false;
    bool aggregation = false;

    for (const ScriptSegment& segment : script.segments) {
        std::vector<CodeToken> tokens = lex_code(segment.text);
        for (size_t i = 0; i < tokens.size(); ++i) {
            const CodeToken& t = tokens[i];
            if (t.kind != TokenKind::identifier && t.kind != TokenKind::op) continue;

            // FROM/JOIN table references. A reference to a name assigned
            // earlier is a derived intermediate (chain), not a source.
            if (t.kind == TokenKind::identifier &&
                (equals_ci(t.text, "FROM") || equals_ci(t.text, "JOIN"))) {
                size_t j = i + 1;
                if (j < tokens.size() && tokens[j].kind == TokenKind::identifier) {
                    std::string name = tokens[j].text;
                    while (j + 2 < tokens.size() && tokens[j + 1].text == "." &&
                           tokens[j + 2].kind == TokenKind::identifier) {
                        name += "." + tokens[j + 2].text;
                        j += 2;
                    }
                    if (assigned.contains(name)) {
                        chain = true;
                    } else {
                        table_sources.insert(name);
                    }
                }
            }

            // Explicit file reads: load('path'), read_parquet('path'), ...
            if (t.kind == TokenKind::identifier &&
                (t.text == "load" || t.text == "read_csv" || t.text == "read_parquet")) {
                if (i + 2 < tokens.size() && tokens[i + 1].text == "(" &&
                    tokens[i + 2].kind == TokenKind::string_lit) {
                    file_sources.insert(tokens[i + 2].text);
                }
            }

            // Assignments (name = expr) and CTE headers (name AS ( ... )).
            if (t.kind == TokenKind::identifier && i + 1 < tokens.size() &&
                tokens[i + 1].kind == TokenKind::op && tokens[i + 1].text == "=" &&
                (i == 0 || tokens[i - 1].kind != TokenKind::op ||
                 tokens[i - 1].text == ";" || tokens[i - 1].text == ")")) {
                assigned.insert(t.text);
            }
            if (t.kind == TokenKind::identifier && equals_ci(t.text, "WITH") &&
                i + 2 < tokens.size() && tokens[i + 1].kind == TokenKind::identifier &&
                equals_ci(tokens[i + 2].text, "AS")) {
                assigned.insert(tokens[i + 1].text);
            }
            if (t.kind == TokenKind::op && t.text == "," && i + 2 < tokens.size() &&
                tokens[i + 1].kind == TokenKind::identifier &&
                equals_ci(tokens[i + 2].text, "AS")) {
                assigned.insert(tokens[i + 1].text);
            }

            // A previously assigned intermediate feeding a later operation.
            if (t.kind == TokenKind::identifier && assigned.contains(t.text) &&
                i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::op &&
                (tokens[i + 1].text == "." || tokens[i + 1].text == "(")) {
                chain = true;
            }

            // Aggregation: aggregate calls, GROUP BY, dataframe groupBy.
            if (t.kind == TokenKind::identifier && is_aggregate_word(t.text) &&
                i + 1 < tokens.size() && tokens[i + 1].text == "(") {
                aggregation = true;
            }
            if (t.kind == TokenKind::identifier && equals_ci(t.text, "GROUP") &&
                i + 1 < tokens.size() && equals_ci(tokens[i + 1].text, "BY")) {
                aggregation = true;
            }
            if (t.kind == TokenKind::identifier &&
                (t.text == "groupBy" || t.text == "groupby" || t.text == "GroupBy")) {
                aggregation = true;
            }
        }
    }

    // When a script reads files explicitly, later FROM/JOIN references name
    // staged intermediates rather than primary origins.
    const auto& sources = file_sources.empty() ? table_sources : file_sources;
    features.source_count = static_cast<int>(sources.size());
    features.transformation_chain = chain;
    features.aggregation = aggregation;
    return features;
}

std::vector<GoldRecord> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open gold file " + path.string());
    }
    std::vector<GoldRecord> records;
    std::set<LineageTask> seen;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        json doc = parse_json_line(line, path, line_number);
        GoldRecord record;
        record.task.script_id = require_string(doc, "script_id", path, line_number);
        record.task.target_schema = require_string(doc, "target_schema", path, line_number);
        if (!doc.contains("lineage") || !doc["lineage"].is_object()) {
            throw Error(ErrorCode::MalformedRecord,
                        path.string() + ":" + std::to_string(line_number) +
                            ": missing lineage object");
        }
        try {
            record.lineage = parse_lineage_dict(doc["lineage"].dump());
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedRecord,
                        path.string() + ":" + std::to_string(line_number) + ": " + e.what());
        }
        if (!seen.insert(record.task).second) {
            throw Error(ErrorCode::DuplicateGoldTask,
                        path.string() + ":" + std::to_string(line_number) +
                            ": duplicate task (" + record.task.script_id + ", " +
                            record.task.target_schema + ")");
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open prediction file " + path.string());
    }
    std::vector<PredictionRecord> records;
    std::set<std::pair<LineageTask, std::string>> seen;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        json doc = parse_json_line(line, path, line_number);
        PredictionRecord record;
        record.task.script_id = require_string(doc, "script_id", path, line_number);
        record.task.target_schema = require_string(doc, "target_schema", path, line_number);
        record.trial_id = require_string(doc, "trial_id", path, line_number);
        record.raw_response = require_string(doc, "raw_response", path, line_number);
        if (doc.contains("note") && doc["note"].is_string()) {
            record.note = doc["note"].get<std::string>();
        }
        if (!seen.insert({record.task, record.trial_id}).second) {
            throw Error(ErrorCode::MalformedRecord,
                        path.string() + ":" + std::to_string(line_number) +
                            ": duplicate prediction for task (" + record.task.script_id +
                            ", " + record.task.target_schema + ") in trial " +
                            record.trial_id);
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::string gold_record_line(const GoldRecord& record) {
    std::string out = "{\"script_id\": \"" + escape_string(record.task.script_id) +
                      "\", \"target_schema\": \"" + escape_string(record.task.target_schema) +
                      "\", \"lineage\": " + canonical_serialize(record.lineage) + "}";
    return out;
}

std::string prediction_record_line(const PredictionRecord& record) {
    std::string out = "{\"script_id\": \"" + escape_string(record.task.script_id) +
                      "\", \"target_schema\": \"" + escape_string(record.task.target_schema) +
                      "\", \"trial_id\": \"" + escape_string(record.trial_id) +
                      "\", \"raw_response\": \"" + escape_string(record.raw_response) + "\"";
    if (record.note.has_value()) {
        out += ", \"note\": \"" + escape_string(*record.note) + "\"";
    }
    out += "}";
    return out;
}

void write_gold(const std::filesystem::path& path, std::span<const GoldRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    for (const GoldRecord& record : records) {
        out << gold_record_line(record) << '\n';
    }
}

void write_predictions(const std::filesystem::path& path,
                       std::span<const PredictionRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    for (const PredictionRecord& record : records) {
        out << prediction_record_line(record) << '\n';
    }
}

const CorpusScript* Corpus::find(std::string_view script_id) const {
    for (const CorpusScript& entry : scripts) {
        if (entry.script.script_id == script_id) return &entry;
    }
    return nullptr;
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError,
                    "manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
    }
    if (!manifest.contains("scripts") || !manifest["scripts"].is_array()) {
        throw Error(ErrorCode::ConfigError, "missing config key scripts");
    }

    Corpus corpus;
    corpus.root = manifest_path.parent_path();
    for (const auto& entry : manifest["scripts"]) {
        for (const char* key : {"id", "path"}) {
            if (!entry.contains(key) || !entry[key].is_string()) {
                throw Error(ErrorCode::ConfigError,
                            std::string("missing config key scripts[].") + key);
            }
        }
        CorpusScript corpus_script;
        std::filesystem::path script_path = corpus.root / entry["path"].get<std::string>();
        corpus_script.script = parse_multilang_script(read_file(script_path));
        corpus_script.script.script_id = entry["id"].get<std::string>();

        if (entry.contains("languages") && entry["languages"].is_array()) {
            const auto& languages = entry["languages"];
            if (languages.size() == corpus_script.script.segments.size()) {
                for (size_t i = 0; i < corpus_script.script.segments.size(); ++i) {
                    corpus_script.script.segments[i].language =
                        parse_language(languages[i].get<std::string>());
                }
            }
        }
        if (entry.contains("features")) {
            const auto& f = entry["features"];
            for (const char* key : {"source_count", "transformation_chain", "aggregation"}) {
                if (!f.contains(key)) {
                    throw Error(ErrorCode::ConfigError,
                                std::string("missing config key scripts[].features.") + key);
                }
            }
            ScriptFeatures features;
            features.source_count = f["source_count"].get<int>();
            features.transformation_chain = f["transformation_chain"].get<bool>();
            features.aggregation = f["aggregation"].get<bool>();
            corpus_script.script.features = features;
        }
        if (entry.contains("difficulty")) {
            corpus_script.script.difficulty =
                parse_difficulty(entry["difficulty"].get<std::string>());
        }
        if (entry.contains("examples")) {
            for (const auto& rel : entry["examples"]) {
                corpus_script.examples.push_back(
                    read_file(corpus.root / rel.get<std::string>()));
            }
        }
        if (entry.contains("traces")) {
            for (const auto& rel : entry["traces"]) {
                corpus_script.traces.push_back(
                    read_file(corpus.root / rel.get<std::string>()));
            }
        }
        corpus.scripts.push_back(std::move(corpus_script));
    }
    if (corpus.scripts.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "manifest lists no scripts");
    }
    return corpus;
}

} // namespace slice
