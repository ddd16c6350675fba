#include "slice/matchers.hpp"

#include "slice/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace slice {

namespace {

/// Decodes UTF-8 into Unicode scalars. Invalid lead or continuation bytes
/// are consumed one byte at a time and kept as their byte value, so every
/// input decodes deterministically.
std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        uint32_t cp = c;
        size_t extra = 0;
        if (c >= 0xF0 && c <= 0xF4) { cp = c & 0x07u; extra = 3; }
        else if (c >= 0xE0 && c <= 0xEF) { cp = c & 0x0Fu; extra = 2; }
        else if (c >= 0xC2 && c <= 0xDF) { cp = c & 0x1Fu; extra = 1; }
        else if (c >= 0x80) { out.push_back(c); ++i; continue; }

        if (extra > 0) {
            if (i + extra >= text.size()) { out.push_back(c); ++i; continue; }
            bool ok = true;
            uint32_t acc = cp;
            for (size_t k = 1; k <= extra; ++k) {
                unsigned char cont = static_cast<unsigned char>(text[i + k]);
                if ((cont & 0xC0) != 0x80) { ok = false; break; }
                acc = (acc << 6) | (cont & 0x3Fu);
            }
            if (!ok) { out.push_back(c); ++i; continue; }
            out.push_back(acc);
            i += extra + 1;
            continue;
        }
        out.push_back(cp);
        ++i;
    }
    return out;
}

} // namespace

int source_schema_score(const std::set<std::string>& pred,
                        const std::set<std::string>& gold) {
    return pred == gold ? 1 : 0;
}

double exact_f1(const std::set<std::string>& pred,
                const std::set<std::string>& gold) {
    if (pred.empty() && gold.empty()) return 1.0;
    if (pred.empty() || gold.empty()) return 0.0;
    size_t tp = 0;
    for (const auto& p : pred) {
        if (gold.contains(p)) ++tp;
    }
    if (tp == 0) return 0.0;
    double precision = static_cast<double>(tp) / static_cast<double>(pred.size());
    double recall = static_cast<double>(tp) / static_cast<double>(gold.size());
    return 2.0 * precision * recall / (precision + recall);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::u32string ua = decode_utf8(a);
    std::u32string ub = decode_utf8(b);
    if (ua.empty()) return ub.size();
    if (ub.empty()) return ua.size();

    std::vector<size_t> prev(ub.size() + 1);
    std::vector<size_t> curr(ub.size() + 1);
    for (size_t j = 0; j <= ub.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= ua.size(); ++i) {
        curr[0] = i;
        for (size_t j = 1; j <= ub.size(); ++j) {
            size_t cost = (ua[i - 1] == ub[j - 1]) ? 0 : 1;
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, curr);
    }
    return prev[ub.size()];
}

double fuzzy_match(std::string_view a, std::string_view b) {
    size_t la = decode_utf8(a).size();
    size_t lb = decode_utf8(b).size();
    size_t longest = std::max(la, lb);
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double fuzzy_f(const std::set<std::string>& pred,
               const std::set<std::string>& gold) {
    if (pred.empty() && gold.empty()) return 1.0;
    if (pred.empty() || gold.empty()) return 0.0;

    auto best_sum = [](const std::set<std::string>& from,
                       const std::set<std::string>& against) {
        double sum = 0.0;
        for (const auto& x : from) {
            double best = 0.0;
            for (const auto& y : against) {
                best = std::max(best, fuzzy_match(x, y));
            }
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    return 0.5 * (best_sum(pred, gold) + best_sum(gold, pred));
}

TableMatchBreakdown table_score(const std::set<std::string>& pred,
                                const std::set<std::string>& gold,
                                double w_exact, double w_fuzzy) {
    if (w_exact < -1e-9 || w_fuzzy < -1e-9 || std::abs(w_exact + w_fuzzy - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights,
                    "table weights must be non-negative and sum to 1");
    }
    TableMatchBreakdown breakdown;
    breakdown.exact_f1 = exact_f1(pred, gold);
    breakdown.fuzzy_f = fuzzy_f(pred, gold);
    breakdown.combined = w_exact * breakdown.exact_f1 + w_fuzzy * breakdown.fuzzy_f;
    return breakdown;
}

} // namespace slice
