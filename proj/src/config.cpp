#include "slice/config.hpp"

#include "slice/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace slice {

namespace {

using nlohmann::json;

double require_number(const json& node, const std::string& path) {
    const json* cursor = &node;
    std::string walked;
    std::istringstream keys(path);
    std::string key;
    while (std::getline(keys, key, '.')) {
        walked = walked.empty() ? key : walked + "." + key;
        if (!cursor->contains(key)) {
            throw Error(ErrorCode::ConfigError, "missing config key " + walked);
        }
        cursor = &(*cursor)[key];
    }
    if (!cursor->is_number()) {
        throw Error(ErrorCode::ConfigError, "config key " + path + " must be a number");
    }
    return cursor->get<double>();
}

} // namespace

EvaluationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError,
                    "config file " + path.string() + " is not valid JSON: " + e.what());
    }

    EvaluationConfig config;
    if (!doc.contains("weights")) {
        throw Error(ErrorCode::ConfigError, "missing config key weights");
    }
    const json& weights = doc["weights"];
    config.table_exact_weight = require_number(weights, "table.exact");
    config.table_fuzzy_weight = require_number(weights, "table.fuzzy");
    config.transformation.bleu = require_number(weights, "transformation.bleu");
    config.transformation.weighted_bleu = require_number(weights, "transformation.weighted_bleu");
    config.transformation.ast = require_number(weights, "transformation.ast");
    config.aggregation.bleu = require_number(weights, "aggregation.bleu");
    config.aggregation.weighted_bleu = require_number(weights, "aggregation.weighted_bleu");
    config.aggregation.ast = require_number(weights, "aggregation.ast");
    config.omega_table = require_number(weights, "composite.table");
    config.omega_transformation = require_number(weights, "composite.transformation");
    config.omega_aggregation = require_number(weights, "composite.aggregation");

    if (doc.contains("mode")) {
        const json& mode = doc["mode"];
        if (mode.contains("reasoning") && mode["reasoning"].get<bool>()) {
            config.mode = ResponseMode::reasoning;
        }
        if (mode.contains("dict_syntax")) {
            std::string syntax = mode["dict_syntax"].get<std::string>();
            if (syntax == "strict") {
                config.dict_syntax = DictSyntax::strict;
            } else if (syntax == "lenient") {
                config.dict_syntax = DictSyntax::lenient;
            } else {
                throw Error(ErrorCode::ConfigError,
                            "config key mode.dict_syntax must be strict or lenient");
            }
        }
    }

    if (doc.contains("lexicons") && doc["lexicons"].is_string()) {
        std::filesystem::path lexicon_path = doc["lexicons"].get<std::string>();
        if (lexicon_path.is_relative()) {
            lexicon_path = path.parent_path() / lexicon_path;
        }
        config.lexicons = load_lexicons(lexicon_path);
    }

    config.validate();
    return config;
}

std::string config_fingerprint(const EvaluationConfig& config) {
    json doc;
    doc["weights"]["table"] = {{"exact", config.table_exact_weight},
                               {"fuzzy", config.table_fuzzy_weight}};
    doc["weights"]["transformation"] = {{"bleu", config.transformation.bleu},
                                        {"weighted_bleu", config.transformation.weighted_bleu},
                                        {"ast", config.transformation.ast}};
    doc["weights"]["aggregation"] = {{"bleu", config.aggregation.bleu},
                                     {"weighted_bleu", config.aggregation.weighted_bleu},
                                     {"ast", config.aggregation.ast}};
    doc["weights"]["composite"] = {{"table", config.omega_table},
                                   {"transformation", config.omega_transformation},
                                   {"aggregation", config.omega_aggregation}};
    doc["mode"] = {{"reasoning", config.mode == ResponseMode::reasoning},
                   {"dict_syntax",
                    config.dict_syntax == DictSyntax::strict ? "strict" : "lenient"}};
    return doc.dump();
}

} // namespace slice
