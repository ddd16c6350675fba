#include "slice/client.hpp"

#include "slice/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace slice {

namespace {

using nlohmann::json;

struct ParsedUrl {
    std::string scheme_host_port;
};

std::string auth_token(const EndpointConfig& endpoint) {
    if (endpoint.auth_env.empty()) return "";
    const char* token = std::getenv(endpoint.auth_env.c_str());
    if (token == nullptr || *token == '\0') {
        throw Error(ErrorCode::ConfigError,
                    "environment variable " + endpoint.auth_env + " is not set");
    }
    return token;
}

std::string extract_content(const std::string& body) {
    json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) return "";
    if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
        const json& first = doc["choices"][0];
        if (first.contains("message") && first["message"].contains("content") &&
            first["message"]["content"].is_string()) {
            return first["message"]["content"].get<std::string>();
        }
        if (first.contains("text") && first["text"].is_string()) {
            return first["text"].get<std::string>();
        }
    }
    return "";
}

/// Serializes request starts when the endpoint enforces a minimum interval.
class RateLimiter {
public:
    explicit RateLimiter(int interval_ms) : interval_ms_(interval_ms) {}

    void acquire() {
        if (interval_ms_ <= 0) return;
        std::unique_lock<std::mutex> lock(mutex_);
        auto now = std::chrono::steady_clock::now();
        if (now < next_) {
            auto wait = next_ - now;
            lock.unlock();
            std::this_thread::sleep_for(wait);
            lock.lock();
            now = std::chrono::steady_clock::now();
        }
        next_ = now + std::chrono::milliseconds(interval_ms_);
    }

private:
    std::mutex mutex_;
    std::chrono::steady_clock::time_point next_ = std::chrono::steady_clock::now();
    int interval_ms_;
};

} // namespace

void EndpointConfig::validate() const {
    if (base_url.empty()) {
        throw Error(ErrorCode::ConfigError, "endpoint base_url is empty");
    }
    if (timeout_seconds <= 0) {
        throw Error(ErrorCode::ConfigError, "endpoint timeout must be positive");
    }
    if (retry.max_attempts < 1) {
        throw Error(ErrorCode::ConfigError, "endpoint retry attempts must be >= 1");
    }
}

EndpointConfig load_endpoint_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open endpoint config " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError,
                    "endpoint config " + path.string() + " is not valid JSON: " + e.what());
    }
    EndpointConfig endpoint;
    if (!doc.contains("base_url") || !doc["base_url"].is_string()) {
        throw Error(ErrorCode::ConfigError, "missing config key base_url");
    }
    endpoint.base_url = doc["base_url"].get<std::string>();
    if (doc.contains("path")) endpoint.path = doc["path"].get<std::string>();
    if (doc.contains("auth_env")) endpoint.auth_env = doc["auth_env"].get<std::string>();
    if (doc.contains("model")) endpoint.model = doc["model"].get<std::string>();
    if (doc.contains("temperature")) endpoint.temperature = doc["temperature"].get<double>();
    if (doc.contains("max_tokens")) endpoint.max_tokens = doc["max_tokens"].get<int>();
    if (doc.contains("timeout_seconds")) {
        endpoint.timeout_seconds = doc["timeout_seconds"].get<int>();
    }
    if (doc.contains("min_request_interval_ms")) {
        endpoint.min_request_interval_ms = doc["min_request_interval_ms"].get<int>();
    }
    if (doc.contains("retry")) {
        const json& retry = doc["retry"];
        if (retry.contains("max_attempts")) {
            endpoint.retry.max_attempts = retry["max_attempts"].get<int>();
        }
        if (retry.contains("backoff_ms")) {
            endpoint.retry.backoff_ms = retry["backoff_ms"].get<int>();
        }
    }
    endpoint.validate();
    return endpoint;
}

std::vector<PredictionRecord> run_extraction(const Corpus& corpus,
                                             std::span<const GoldRecord> gold,
                                             Strategy strategy,
                                             const EndpointConfig& endpoint,
                                             const ExtractionOptions& options) {
    endpoint.validate();
    const std::string token = auth_token(endpoint);

    // One prompt prefix per script, built before any request goes out.
    std::map<std::string, std::string> prefixes;
    for (const GoldRecord& record : gold) {
        const std::string& script_id = record.task.script_id;
        if (prefixes.contains(script_id)) continue;
        const CorpusScript* entry = corpus.find(script_id);
        if (entry == nullptr) {
            throw Error(ErrorCode::MalformedRecord,
                        "gold task references unknown script \"" + script_id + "\"");
        }
        const int arity = strategy_arity(strategy);
        PromptSpec spec;
        spec.strategy = strategy;
        spec.script_text = entry->script.full_text();
        if (static_cast<int>(entry->examples.size()) < arity ||
            (strategy_expects_reasoning(strategy) &&
             static_cast<int>(entry->traces.size()) < arity)) {
            throw Error(ErrorCode::ArityMismatch,
                        "script \"" + script_id + "\" has too few examples/traces for " +
                            std::string(strategy_name(strategy)));
        }
        spec.examples.assign(entry->examples.begin(), entry->examples.begin() + arity);
        if (strategy_expects_reasoning(strategy)) {
            spec.traces.assign(entry->traces.begin(), entry->traces.begin() + arity);
        }
        prefixes[script_id] = build_prompt(spec);
    }

    // Reachability preflight: any HTTP response (even an error status)
    // proves the endpoint is there; no response at all aborts the run.
    httplib::Client preflight(endpoint.base_url);
    preflight.set_connection_timeout(endpoint.timeout_seconds);
    preflight.set_read_timeout(endpoint.timeout_seconds);
    if (auto res = preflight.Get("/"); res == nullptr) {
        throw Error(ErrorCode::EndpointUnreachable,
                    "no response from " + endpoint.base_url);
    }

    std::vector<PredictionRecord> records(gold.size());
    std::atomic<size_t> cursor{0};
    RateLimiter limiter(endpoint.min_request_interval_ms);
    const int workers = std::max(1, options.workers);

    auto worker = [&]() {
        httplib::Client client(endpoint.base_url);
        client.set_connection_timeout(endpoint.timeout_seconds);
        client.set_read_timeout(endpoint.timeout_seconds);
        if (!token.empty()) client.set_bearer_token_auth(token);

        for (;;) {
            size_t index = cursor.fetch_add(1);
            if (index >= gold.size()) break;
            const GoldRecord& task = gold[index];

            PredictionRecord record;
            record.task = task.task;
            record.trial_id = options.trial_id;

            json body;
            body["model"] = endpoint.model;
            body["temperature"] = endpoint.temperature;
            body["max_tokens"] = endpoint.max_tokens;
            body["seed"] = options.seed;
            body["messages"] = json::array(
                {{{"role", "user"},
                  {"content", append_target_query(prefixes[task.task.script_id],
                                                  task.task.target_schema)}}});
            const std::string payload = body.dump();

            int backoff = endpoint.retry.backoff_ms;
            bool done = false;
            for (int attempt = 0; attempt < endpoint.retry.max_attempts; ++attempt) {
                if (attempt > 0) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
                    backoff *= 2;
                }
                limiter.acquire();
                auto res = client.Post(endpoint.path, payload, "application/json");
                if (res && res->status >= 200 && res->status < 300) {
                    record.raw_response = extract_content(res->body);
                    done = true;
                    break;
                }
            }
            if (!done) {
                record.raw_response = "";
                record.note = "request failed after " +
                              std::to_string(endpoint.retry.max_attempts) + " attempt(s)";
            }
            records[index] = std::move(record);
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return records;
}

} // namespace slice
