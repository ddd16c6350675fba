#ifndef SLICE_RESPONSE_HPP
#define SLICE_RESPONSE_HPP

#include "slice/lineage.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace slice {

/// Whether a response is expected to carry a reasoning block in addition to
/// the answer block.
enum class ResponseMode { answer_only, reasoning };

/// Scaffold tags. Matching is literal and case-sensitive.
inline constexpr std::string_view kThinkOpen = "<think>";
inline constexpr std::string_view kThinkClose = "</think>";
inline constexpr std::string_view kAnswerOpen = "<answer>";
inline constexpr std::string_view kAnswerClose = "</answer>";

struct ExtractedBlocks {
    std::optional<std::string> think;
    std::optional<std::string> answer;
};

/// A raw model response together with its parsed blocks and format verdict.
/// format_ok == 1 implies lineage is present and valid.
struct ModelResponse {
    std::string raw;
    ResponseMode mode = ResponseMode::answer_only;
    std::optional<std::string> think_block;
    std::optional<std::string> answer_block;
    int format_ok = 0;
    std::optional<SchemaLineage> lineage;
    std::string diagnostic; // empty when format_ok == 1
};

/// Locates the scaffold blocks. Requires exactly one answer pair, exactly
/// one think pair when mode is reasoning, and no think tag at all in
/// answer-only mode. Text outside the recognized pairs is ignored.
/// Throws Error with MissingTag, DuplicateTag, UnexpectedThinkBlock, or
/// UnclosedTag.
ExtractedBlocks extract_blocks(std::string_view raw, ResponseMode mode);

/// Computes the binary format gate: 1 iff extract_blocks succeeds and the
/// answer block parses as a lineage dictionary. Failures never throw; they
/// come back as format_ok = 0 with a diagnostic reason. When the scaffold is
/// broken but a single answer pair is still findable, the lineage is parsed
/// anyway so downstream components can be reported for diagnostics.
ModelResponse format_score(std::string_view raw, ResponseMode mode,
                           DictSyntax syntax = DictSyntax::strict);

} // namespace slice

#endif // SLICE_RESPONSE_HPP
