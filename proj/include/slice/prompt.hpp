#ifndef SLICE_PROMPT_HPP
#define SLICE_PROMPT_HPP

#include "slice/corpus.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slice {

/// The seven prompting strategies: base, few-shot with 1..3 examples, and
/// chain-of-thought with 1..3 reasoning traces.
enum class Strategy { base, one_shot, two_shot, three_shot, cot1, cot2, cot3 };

std::string_view strategy_name(Strategy strategy);
Strategy parse_strategy(std::string_view name); // throws ConfigError

/// Number of in-context examples (and traces, for CoT) the strategy needs.
int strategy_arity(Strategy strategy);

/// True for strategies whose responses must carry a think block.
bool strategy_expects_reasoning(Strategy strategy);

struct PromptSpec {
    Strategy strategy = Strategy::base;
    std::string script_text;
    std::vector<std::string> examples; // worked lineage dictionaries
    std::vector<std::string> traces;   // reasoning texts, paired with examples
};

/// Renders the per-script prompt prefix for the strategy. Few-shot needs
/// exactly arity examples; CoT needs arity examples and arity traces
/// (ArityMismatch otherwise). The per-task column query is appended
/// separately with append_target_query.
std::string build_prompt(const PromptSpec& spec);

/// Appends the target-schema query for one task to a prompt prefix.
std::string append_target_query(std::string_view prompt_prefix,
                                std::string_view target_schema);

} // namespace slice

#endif // SLICE_PROMPT_HPP
