#include "slice/prompt.hpp"

#include "slice/errors.hpp"

namespace slice {

namespace {

constexpr std::string_view kRoleHeader =
    "You are a data lineage analysis assistant. Your task is to analyze the "
    "provided data generation script and trace the lineage of a specific "
    "column which is specified by the user.\n";

constexpr std::string_view kAnswerOnlyFormat =
    "Your response must include <answer> </answer> part:\n"
    "<answer> {\n"
    "  \"source_schema\": \"...\",\n"
    "  \"source_table\": \"...\",\n"
    "  \"transformation\": \"...\",\n"
    "  \"aggregation\": \"...\"\n"
    "} </answer>.\n";

constexpr std::string_view kTwoPartFormat =
    "Your response must include two parts:\n"
    "1. <think> ... </think>\n"
    "2. <answer> {\n"
    "  \"source_schema\": \"...\",\n"
    "  \"source_table\": \"...\",\n"
    "  \"transformation\": \"...\",\n"
    "  \"aggregation\": \"...\"\n"
    "} </answer>.\n";

constexpr std::string_view kFieldInstructions =
    "Field definitions:\n"
    "- source_schema: the original column names the target column is derived "
    "from, comma-separated.\n"
    "- source_table: the primary tables or files those columns are read from, "
    "semicolon-separated.\n"
    "- transformation: the code snippets applied on the way to the target "
    "column, in order, separated by the literal token <CODEEND>.\n"
    "- aggregation: aggregation operations (such as SUM, COUNT, AVG, MIN, MAX) "
    "together with their grouping keys, separated by <CODEEND>.\n"
    "Use an empty string for any field that does not apply. Copy code snippets "
    "exactly as written in the script.\n";

} // namespace

std::string_view strategy_name(Strategy strategy) {
    switch (strategy) {
    case Strategy::base: return "base";
    case Strategy::one_shot: return "one-shot";
    case Strategy::two_shot: return "two-shot";
    case Strategy::three_shot: return "three-shot";
    case Strategy::cot1: return "cot-1";
    case Strategy::cot2: return "cot-2";
    case Strategy::cot3: return "cot-3";
    }
    return "base";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "base") return Strategy::base;
    if (name == "one-shot") return Strategy::one_shot;
    if (name == "two-shot") return Strategy::two_shot;
    if (name == "three-shot") return Strategy::three_shot;
    if (name == "cot-1") return Strategy::cot1;
    if (name == "cot-2") return Strategy::cot2;
    if (name == "cot-3") return Strategy::cot3;
    throw Error(ErrorCode::ConfigError, "unknown strategy \"" + std::string(name) + "\"");
}

int strategy_arity(Strategy strategy) {
    switch (strategy) {
    case Strategy::base: return 0;
    case Strategy::one_shot:
    case Strategy::cot1: return 1;
    case Strategy::two_shot:
    case Strategy::cot2: return 2;
    case Strategy::three_shot:
    case Strategy::cot3: return 3;
    }
    return 0;
}

bool strategy_expects_reasoning(Strategy strategy) {
    return strategy == Strategy::cot1 || strategy == Strategy::cot2 ||
           strategy == Strategy::cot3;
}

std::string build_prompt(const PromptSpec& spec) {
    const int arity = strategy_arity(spec.strategy);
    const bool reasoning = strategy_expects_reasoning(spec.strategy);
    if (static_cast<int>(spec.examples.size()) != arity) {
        throw Error(ErrorCode::ArityMismatch,
                    std::string(strategy_name(spec.strategy)) + " needs " +
                        std::to_string(arity) + " example(s), got " +
                        std::to_string(spec.examples.size()));
    }
    if (reasoning && static_cast<int>(spec.traces.size()) != arity) {
        throw Error(ErrorCode::ArityMismatch,
                    std::string(strategy_name(spec.strategy)) + " needs " +
                        std::to_string(arity) + " reasoning trace(s), got " +
                        std::to_string(spec.traces.size()));
    }

    std::string prompt;
    prompt += kRoleHeader;
    prompt += '\n';
    prompt += reasoning ? kTwoPartFormat : kAnswerOnlyFormat;
    prompt += '\n';
    prompt += kFieldInstructions;
    prompt += '\n';
    prompt += "Data Pipeline Script:\n";
    prompt += spec.script_text;
    prompt += '\n';

    if (arity > 0) {
        prompt += "\nExamples:\n";
        for (int i = 0; i < arity; ++i) {
            prompt += "\nExample " + std::to_string(i + 1) + ":\n";
            if (reasoning) {
                prompt += "<think> " + spec.traces[static_cast<size_t>(i)] + " </think>\n";
            }
            prompt += "<answer> " + spec.examples[static_cast<size_t>(i)] + " </answer>\n";
        }
    }
    return prompt;
}

std::string append_target_query(std::string_view prompt_prefix,
                                std::string_view target_schema) {
    std::string out(prompt_prefix);
    out += "\nTrace the lineage of this column of the output table.\n";
    out += "Target column: ";
    out += target_schema;
    out += '\n';
    return out;
}

} // namespace slice
