#ifndef SLICE_LINEAGE_HPP
#define SLICE_LINEAGE_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace slice {

/// Literal delimiter separating ordered code snippets inside the
/// transformation and aggregation fields. Bit-exact contract surface.
inline constexpr std::string_view kCodeEnd = "<CODEEND>";

/// The four required dictionary keys, in canonical rendering order.
inline constexpr std::string_view kKeySourceSchema = "source_schema";
inline constexpr std::string_view kKeySourceTable = "source_table";
inline constexpr std::string_view kKeyTransformation = "transformation";
inline constexpr std::string_view kKeyAggregation = "aggregation";

/// Schema lineage record: the four components tracing one output column
/// back to its origins. Column and table names are order-insensitive sets;
/// transformation and aggregation are ordered snippet sequences.
///
/// Values are immutable-by-convention plain data, safe to share across
/// threads once built.
struct SchemaLineage {
    std::set<std::string> source_schema;
    std::set<std::string> source_table;
    std::vector<std::string> transformation;
    std::vector<std::string> aggregation;

    bool operator==(const SchemaLineage&) const = default;
};

/// One extraction task: a script plus the output column being traced.
struct LineageTask {
    std::string script_id;
    std::string target_schema;

    bool operator==(const LineageTask&) const = default;
    auto operator<=>(const LineageTask&) const = default;
};

/// Dictionary parsing strictness. Strict requires double-quoted strings and
/// no trailing commas; lenient also accepts single-quoted strings and a
/// trailing comma before the closing brace.
enum class DictSyntax { strict, lenient };

/// Splits a field on the literal <CODEEND> token, trimming each piece and
/// dropping empty ones. Order is preserved; empty input yields an empty list.
std::vector<std::string> split_codeend(std::string_view field_text);

/// Splits a comma-separated column list into a deduplicated, trimmed set.
std::set<std::string> parse_schema_list(std::string_view text);

/// Splits a table list on semicolons and commas occurring outside
/// parentheses into a deduplicated, trimmed set.
std::set<std::string> parse_table_list(std::string_view text);

/// Parses the four-key lineage dictionary (the content between answer tags).
/// Throws Error with MalformedDict (not an object / non-string value /
/// syntax error) or KeySetMismatch (missing, extra, duplicate, or misnamed
/// key; key matching is case-sensitive).
SchemaLineage parse_lineage_dict(std::string_view text,
                                 DictSyntax syntax = DictSyntax::strict);

/// Canonical field renderings: schemas sorted and comma-joined, tables
/// sorted and semicolon-joined, snippets joined with " <CODEEND> ".
std::string join_schema_field(const std::set<std::string>& columns);
std::string join_table_field(const std::set<std::string>& tables);
std::string join_snippet_field(const std::vector<std::string>& snippets);

/// Deterministic dictionary rendering of a lineage. Round-trips:
/// parse_lineage_dict(canonical_serialize(L)) == L for valid lineages.
std::string canonical_serialize(const SchemaLineage& lineage);

/// JSON-style string escaping used by the canonical rendering.
std::string escape_string(std::string_view text);

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view text);

/// Invariant check used by `validate` tooling. Returns human-readable
/// findings; empty means the lineage is well-formed and round-trip safe.
std::vector<std::string> lineage_findings(const SchemaLineage& lineage);

} // namespace slice

#endif // SLICE_LINEAGE_HPP
