#ifndef SLICE_CORPUS_HPP
#define SLICE_CORPUS_HPP

#include "slice/lineage.hpp"
#include "slice/scoring.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slice {

/// Delimiter marking programming-language transitions inside a pipeline
/// script, on a line of its own. Bit-exact contract surface.
inline constexpr std::string_view kSegmentDelimiter = ">>>>>";

struct ScriptFeatures {
    int source_count = 0;
    bool transformation_chain = false;
    bool aggregation = false;

    bool operator==(const ScriptFeatures&) const = default;
};

struct ScriptSegment {
    std::optional<Language> language;
    std::string text;
};

struct PipelineScript {
    std::string script_id;
    std::vector<ScriptSegment> segments;
    std::optional<ScriptFeatures> features; // declared metadata, authoritative
    std::optional<Difficulty> difficulty;   // declared label, authoritative

    std::string full_text() const; // segments joined back with the delimiter
};

/// Splits raw script text on lines consisting solely of ">>>>>". Segments
/// are trimmed and empties dropped; throws EmptyScript when nothing
/// remains.
PipelineScript parse_multilang_script(std::string_view raw);

/// Difficulty from the three feature bits:
/// score = [source_count >= 3] + [transformation_chain] + [aggregation];
/// 0-1 easy, 2 medium, 3 hard. Throws MissingFeatures when absent.
Difficulty difficulty_level(const std::optional<ScriptFeatures>& features);

/// Heuristic feature scan (advisory; declared metadata wins): distinct read
/// sources from load/FROM/JOIN occurrences, chains from intermediates that
/// feed later operations, aggregation from aggregate-function hits.
ScriptFeatures detect_features(const PipelineScript& script);

struct GoldRecord {
    LineageTask task;
    SchemaLineage lineage;
};

struct PredictionRecord {
    LineageTask task;
    std::string trial_id;
    std::string raw_response;
    std::optional<std::string> note; // failure annotation from extraction
};

/// Line-delimited record I/O. Gold lines carry {script_id, target_schema,
/// lineage}; prediction lines carry {script_id, target_schema, trial_id,
/// raw_response}. Malformed lines raise MalformedRecord with the line
/// number; duplicate gold tasks raise DuplicateGoldTask.
std::vector<GoldRecord> load_gold(const std::filesystem::path& path);
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path);

std::string gold_record_line(const GoldRecord& record);
std::string prediction_record_line(const PredictionRecord& record);

void write_gold(const std::filesystem::path& path, std::span<const GoldRecord> records);
void write_predictions(const std::filesystem::path& path,
                       std::span<const PredictionRecord> records);

/// A script corpus: one file per script plus a manifest naming the files
/// and carrying declared metadata (language tags, features, difficulty,
/// worked examples and reasoning traces for prompting).
struct CorpusScript {
    PipelineScript script;
    std::vector<std::string> examples; // worked lineage example texts
    std::vector<std::string> traces;   // reasoning trace texts
};

struct Corpus {
    std::filesystem::path root;
    std::vector<CorpusScript> scripts;

    const CorpusScript* find(std::string_view script_id) const;
};

Corpus load_corpus(const std::filesystem::path& manifest_path);

} // namespace slice

#endif // SLICE_CORPUS_HPP
