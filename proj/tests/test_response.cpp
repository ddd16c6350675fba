#include <catch2/catch_amalgamated.hpp>

#include "slice/errors.hpp"
#include "slice/response.hpp"

using namespace slice;

namespace {

const std::string kGoodDict =
    R"({"source_schema": "a, b", "source_table": "t", "transformation": "a AS x", "aggregation": ""})";

}

TEST_CASE("extract_blocks answer-only", "[response]") {
    auto blocks = extract_blocks("<answer>{...}</answer>", ResponseMode::answer_only);
    CHECK_FALSE(blocks.think.has_value());
    CHECK(blocks.answer == "{...}");

    // chatter around the block is ignored
    blocks = extract_blocks("sure! <answer>X</answer> hope that helps",
                            ResponseMode::answer_only);
    CHECK(blocks.answer == "X");
}

TEST_CASE("extract_blocks reasoning mode", "[response]") {
    auto blocks =
        extract_blocks("<think>x</think><answer>{...}</answer>", ResponseMode::reasoning);
    CHECK(blocks.think == "x");
    CHECK(blocks.answer == "{...}");
}

TEST_CASE("extract_blocks error taxonomy", "[response]") {
    auto code_of = [](std::string_view raw, ResponseMode mode) {
        try {
            extract_blocks(raw, mode);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConfigError; // sentinel
    };
    CHECK(code_of("<think>x</think><answer>y</answer>", ResponseMode::answer_only) ==
          ErrorCode::UnexpectedThinkBlock);
    CHECK(code_of("no blocks at all", ResponseMode::answer_only) == ErrorCode::MissingTag);
    CHECK(code_of("<answer>y", ResponseMode::answer_only) == ErrorCode::UnclosedTag);
    CHECK(code_of("</answer> <answer>y", ResponseMode::answer_only) ==
          ErrorCode::UnclosedTag);
    CHECK(code_of("<answer>a</answer><answer>b</answer>", ResponseMode::answer_only) ==
          ErrorCode::DuplicateTag);
    CHECK(code_of("<answer>y</answer>", ResponseMode::reasoning) == ErrorCode::MissingTag);
    CHECK(code_of("<think>x<answer>y</answer>", ResponseMode::reasoning) ==
          ErrorCode::UnclosedTag);
    // empty think block is tolerated: the gate checks structure, not content
    CHECK_NOTHROW(extract_blocks("<think></think><answer>y</answer>",
                                 ResponseMode::reasoning));
}

TEST_CASE("format_score gates on tags and dictionary", "[response]") {
    ModelResponse good =
        format_score("<answer>" + kGoodDict + "</answer>", ResponseMode::answer_only);
    CHECK(good.format_ok == 1);
    REQUIRE(good.lineage.has_value());
    CHECK(good.lineage->source_schema == std::set<std::string>{"a", "b"});
    CHECK(good.diagnostic.empty());

    // wrong key name inside a well-formed answer block
    ModelResponse bad_key = format_score(
        R"(<answer>{"sourceschema": "a", "source_table": "t", "transformation": "", "aggregation": ""}</answer>)",
        ResponseMode::answer_only);
    CHECK(bad_key.format_ok == 0);
    CHECK_FALSE(bad_key.lineage.has_value());
    CHECK_FALSE(bad_key.diagnostic.empty());

    // truncated response
    ModelResponse truncated =
        format_score("<answer>" + kGoodDict, ResponseMode::answer_only);
    CHECK(truncated.format_ok == 0);

    // think block in answer-only mode fails the gate but the lineage is
    // still parsed for diagnostics
    ModelResponse gated = format_score(
        "<think>hm</think><answer>" + kGoodDict + "</answer>", ResponseMode::answer_only);
    CHECK(gated.format_ok == 0);
    CHECK(gated.lineage.has_value());
}

TEST_CASE("format_score is invariant to surrounding chatter", "[response]") {
    std::string core = "<answer>" + kGoodDict + "</answer>";
    ModelResponse a = format_score(core, ResponseMode::answer_only);
    ModelResponse b =
        format_score("Of course.\n" + core + "\nLet me know!", ResponseMode::answer_only);
    CHECK(a.format_ok == b.format_ok);
    CHECK(a.lineage == b.lineage);
}

TEST_CASE("format_ok implies lineage present", "[response]") {
    // property over a small corpus of mutations
    std::vector<std::string> raws = {
        "<answer>" + kGoodDict + "</answer>",
        "<answer>{}</answer>",
        "<answer>" + kGoodDict,
        "prefix <answer>" + kGoodDict + "</answer> suffix",
        "<think>t</think><answer>" + kGoodDict + "</answer>",
        "no tags",
    };
    for (const std::string& raw : raws) {
        for (ResponseMode mode : {ResponseMode::answer_only, ResponseMode::reasoning}) {
            ModelResponse response = format_score(raw, mode);
            if (response.format_ok == 1) {
                CHECK(response.lineage.has_value());
                CHECK(response.diagnostic.empty());
            } else {
                CHECK_FALSE(response.diagnostic.empty());
            }
        }
    }
}
