#include "slice/response.hpp"

#include "slice/errors.hpp"

#include <vector>

namespace slice {

namespace {

std::vector<size_t> find_all(std::string_view haystack, std::string_view needle) {
    std::vector<size_t> out;
    size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        out.push_back(pos);
        pos += needle.size();
    }
    return out;
}

/// Extracts the inner text of a tag pair that must occur exactly once.
std::string extract_single(std::string_view raw, std::string_view open,
                           std::string_view close, std::string_view label) {
    auto opens = find_all(raw, open);
    auto closes = find_all(raw, close);
    if (opens.size() > 1 || closes.size() > 1) {
        throw Error(ErrorCode::DuplicateTag,
                    "more than one " + std::string(label) + " block");
    }
    if (opens.empty() && closes.empty()) {
        throw Error(ErrorCode::MissingTag, "no " + std::string(label) + " block");
    }
    if (opens.empty()) {
        throw Error(ErrorCode::MissingTag,
                    std::string(label) + " close tag without open tag");
    }
    if (closes.empty() || closes.front() < opens.front()) {
        throw Error(ErrorCode::UnclosedTag,
                    std::string(label) + " block is never closed");
    }
    size_t begin = opens.front() + open.size();
    return std::string(raw.substr(begin, closes.front() - begin));
}

} // namespace

ExtractedBlocks extract_blocks(std::string_view raw, ResponseMode mode) {
    ExtractedBlocks blocks;
    if (mode == ResponseMode::answer_only) {
        if (raw.find(kThinkOpen) != std::string_view::npos ||
            raw.find(kThinkClose) != std::string_view::npos) {
            throw Error(ErrorCode::UnexpectedThinkBlock,
                        "think tag present in answer-only mode");
        }
    } else {
        blocks.think = extract_single(raw, kThinkOpen, kThinkClose, "think");
    }
    blocks.answer = extract_single(raw, kAnswerOpen, kAnswerClose, "answer");
    return blocks;
}

ModelResponse format_score(std::string_view raw, ResponseMode mode, DictSyntax syntax) {
    ModelResponse response;
    response.raw = std::string(raw);
    response.mode = mode;

    std::optional<std::string> answer;
    try {
        ExtractedBlocks blocks = extract_blocks(raw, mode);
        response.think_block = blocks.think;
        response.answer_block = blocks.answer;
        answer = blocks.answer;
    } catch (const Error& e) {
        response.diagnostic = e.what();
        // Best effort: take the first answer pair, if any, so component
        // diagnostics stay available behind the closed gate.
        size_t open = raw.find(kAnswerOpen);
        if (open != std::string_view::npos) {
            size_t begin = open + kAnswerOpen.size();
            size_t close = raw.find(kAnswerClose, begin);
            if (close != std::string_view::npos) {
                answer = std::string(raw.substr(begin, close - begin));
                response.answer_block = answer;
            }
        }
    }

    if (answer.has_value()) {
        try {
            response.lineage = parse_lineage_dict(*answer, syntax);
            if (response.diagnostic.empty()) {
                response.format_ok = 1;
            }
        } catch (const Error& e) {
            response.lineage.reset();
            if (response.diagnostic.empty()) {
                response.diagnostic = e.what();
            }
        }
    }
    return response;
}

} // namespace slice
