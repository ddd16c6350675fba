#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slice/ast.hpp"
#include "slice/codesim.hpp"
#include "slice/config.hpp"
#include "slice/corpus.hpp"
#include "slice/errors.hpp"
#include "slice/matchers.hpp"
#include "slice/prompt.hpp"
#include "slice/response.hpp"
#include "slice/scoring.hpp"
#include "slice/tokenizer.hpp"

#include <set>

namespace py = pybind11;

namespace {

std::set<std::string> to_set(const std::vector<std::string>& values) {
    return {values.begin(), values.end()};
}

std::vector<std::string> to_sorted_list(const std::set<std::string>& values) {
    return {values.begin(), values.end()};
}

py::dict language_weights_dict(const std::map<slice::Language, double>& weights) {
    py::dict out;
    for (const auto& [language, weight] : weights) {
        out[py::str(std::string(slice::language_name(language)))] = weight;
    }
    return out;
}

py::dict record_to_dict(const slice::ScoredRecord& record) {
    py::dict out;
    out["m_fmt"] = record.m_fmt;
    out["m_src"] = record.m_src;
    out["m_tbl"] = record.m_tbl;
    out["m_trf"] = record.m_trf;
    out["m_agg"] = record.m_agg;
    out["slice"] = record.slice;
    out["tbl_exact_f1"] = record.table.exact_f1;
    out["tbl_fuzzy_f"] = record.table.fuzzy_f;
    out["trf_bleu"] = record.transformation.bleu;
    out["trf_weighted_bleu"] = record.transformation.weighted_bleu;
    out["trf_ast"] = record.transformation.ast_multi;
    out["agg_bleu"] = record.aggregation.bleu;
    out["agg_weighted_bleu"] = record.aggregation.weighted_bleu;
    out["agg_ast"] = record.aggregation.ast_multi;
    out["diagnostic"] = record.diagnostic;
    return out;
}

slice::EvaluationConfig make_config(const std::optional<std::string>& config_path,
                                    bool reasoning, bool lenient) {
    slice::EvaluationConfig config;
    if (config_path.has_value()) {
        config = slice::load_config(*config_path);
    }
    if (reasoning) config.mode = slice::ResponseMode::reasoning;
    if (lenient) config.dict_syntax = slice::DictSyntax::lenient;
    return config;
}

} // namespace

PYBIND11_MODULE(sliceval, m) {
    m.doc() = "schema lineage scoring toolkit";

    py::register_exception<slice::Error>(m, "SliceError");

    py::class_<slice::SchemaLineage>(m, "SchemaLineage")
        .def(py::init<>())
        .def_property(
            "source_schema",
            [](const slice::SchemaLineage& l) { return to_sorted_list(l.source_schema); },
            [](slice::SchemaLineage& l, const std::vector<std::string>& v) {
                l.source_schema = to_set(v);
            })
        .def_property(
            "source_table",
            [](const slice::SchemaLineage& l) { return to_sorted_list(l.source_table); },
            [](slice::SchemaLineage& l, const std::vector<std::string>& v) {
                l.source_table = to_set(v);
            })
        .def_readwrite("transformation", &slice::SchemaLineage::transformation)
        .def_readwrite("aggregation", &slice::SchemaLineage::aggregation)
        .def("to_text", &slice::canonical_serialize)
        .def("__eq__",
             [](const slice::SchemaLineage& a, const slice::SchemaLineage& b) {
                 return a == b;
             })
        .def("__repr__", [](const slice::SchemaLineage& l) {
            return "SchemaLineage(" + slice::canonical_serialize(l) + ")";
        });

    m.def(
        "parse_lineage",
        [](const std::string& text, bool lenient) {
            return slice::parse_lineage_dict(text, lenient ? slice::DictSyntax::lenient
                                                           : slice::DictSyntax::strict);
        },
        py::arg("text"), py::arg("lenient") = false,
        "Parse a four-key lineage dictionary.");
    m.def("split_codeend", &slice::split_codeend, py::arg("text"));
    m.def(
        "parse_schema_list",
        [](const std::string& text) { return to_sorted_list(slice::parse_schema_list(text)); },
        py::arg("text"));
    m.def(
        "parse_table_list",
        [](const std::string& text) { return to_sorted_list(slice::parse_table_list(text)); },
        py::arg("text"));
    m.def("tokenize_code", &slice::tokenize_code, py::arg("text"));

    m.def(
        "format_score",
        [](const std::string& raw, bool reasoning, bool lenient) {
            slice::ModelResponse response = slice::format_score(
                raw,
                reasoning ? slice::ResponseMode::reasoning : slice::ResponseMode::answer_only,
                lenient ? slice::DictSyntax::lenient : slice::DictSyntax::strict);
            py::dict out;
            out["format_ok"] = response.format_ok;
            out["think"] = response.think_block ? py::cast(*response.think_block)
                                                : py::none();
            out["answer"] = response.answer_block ? py::cast(*response.answer_block)
                                                  : py::none();
            out["lineage"] = response.lineage ? py::cast(*response.lineage) : py::none();
            out["diagnostic"] = response.diagnostic;
            return out;
        },
        py::arg("raw"), py::arg("reasoning") = false, py::arg("lenient") = false);

    m.def("levenshtein",
          [](const std::string& a, const std::string& b) { return slice::levenshtein(a, b); });
    m.def("fuzzy_match",
          [](const std::string& a, const std::string& b) { return slice::fuzzy_match(a, b); });
    m.def(
        "exact_f1",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
            return slice::exact_f1(to_set(pred), to_set(gold));
        },
        py::arg("pred"), py::arg("gold"));
    m.def(
        "fuzzy_f",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
            return slice::fuzzy_f(to_set(pred), to_set(gold));
        },
        py::arg("pred"), py::arg("gold"));
    m.def(
        "table_score",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& gold,
           double w_exact, double w_fuzzy) {
            auto breakdown = slice::table_score(to_set(pred), to_set(gold), w_exact, w_fuzzy);
            py::dict out;
            out["exact_f1"] = breakdown.exact_f1;
            out["fuzzy_f"] = breakdown.fuzzy_f;
            out["combined"] = breakdown.combined;
            return out;
        },
        py::arg("pred"), py::arg("gold"), py::arg("w_exact") = 0.7,
        py::arg("w_fuzzy") = 0.3);

    m.def(
        "bleu",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
            return slice::bleu(pred, gold);
        },
        py::arg("pred_snippets"), py::arg("gold_snippets"));
    m.def(
        "weighted_bleu",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
            return slice::weighted_bleu(pred, gold, slice::builtin_lexicons());
        },
        py::arg("pred_snippets"), py::arg("gold_snippets"));
    m.def(
        "language_weights",
        [](const std::string& text) {
            return language_weights_dict(
                slice::language_weights(text, slice::builtin_lexicons()));
        },
        py::arg("text"));
    m.def(
        "ast_similarity",
        [](const std::string& pred, const std::string& gold, const std::string& language) {
            return slice::ast_similarity(pred, gold, slice::parse_language(language));
        },
        py::arg("pred"), py::arg("gold"), py::arg("language"));
    m.def(
        "multi_ast",
        [](const std::string& pred, const std::string& gold) {
            return slice::multi_ast(pred, gold, slice::builtin_lexicons());
        },
        py::arg("pred"), py::arg("gold"));

    m.def(
        "slice_score",
        [](const std::string& raw_response, const slice::SchemaLineage& gold,
           bool reasoning, bool lenient, const std::optional<std::string>& config_path) {
            slice::EvaluationConfig config = make_config(config_path, reasoning, lenient);
            slice::ScoredRecord record =
                slice::slice_score(slice::LineageTask{}, raw_response, gold, config);
            return record_to_dict(record);
        },
        py::arg("raw_response"), py::arg("gold"), py::arg("reasoning") = false,
        py::arg("lenient") = false, py::arg("config") = std::nullopt,
        "Score one raw response against a gold lineage; returns all components.");

    m.def(
        "script_score",
        [](const std::vector<double>& slices) {
            if (slices.empty()) {
                throw slice::Error(slice::ErrorCode::EmptyScript, "no records");
            }
            double sum = 0.0;
            for (double v : slices) sum += v;
            return sum / static_cast<double>(slices.size());
        },
        py::arg("record_scores"));
    m.def(
        "corpus_score",
        [](const std::vector<double>& scores) {
            return slice::corpus_score(std::span<const double>(scores));
        },
        py::arg("script_scores"));
    m.def(
        "trial_stats",
        [](const std::vector<double>& scores) {
            auto stats = slice::trial_stats(std::span<const double>(scores));
            return py::make_tuple(stats.mean, stats.stddev);
        },
        py::arg("corpus_scores"));

    m.def(
        "build_prompt",
        [](const std::string& strategy, const std::string& script_text,
           const std::vector<std::string>& examples, const std::vector<std::string>& traces) {
            slice::PromptSpec spec;
            spec.strategy = slice::parse_strategy(strategy);
            spec.script_text = script_text;
            spec.examples = examples;
            spec.traces = traces;
            return slice::build_prompt(spec);
        },
        py::arg("strategy"), py::arg("script_text"),
        py::arg("examples") = std::vector<std::string>{},
        py::arg("traces") = std::vector<std::string>{});

    m.def(
        "difficulty_level",
        [](int source_count, bool transformation_chain, bool aggregation) {
            slice::ScriptFeatures features{source_count, transformation_chain, aggregation};
            return std::string(
                slice::difficulty_name(slice::difficulty_level(features)));
        },
        py::arg("source_count"), py::arg("transformation_chain"), py::arg("aggregation"));

    m.attr("__version__") = "0.1.0";
    m.attr("CODEEND") = std::string(slice::kCodeEnd);
}
