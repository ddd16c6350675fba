#ifndef SLICE_CLIENT_HPP
#define SLICE_CLIENT_HPP

#include "slice/corpus.hpp"
#include "slice/prompt.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace slice {

struct RetryPolicy {
    int max_attempts = 3;
    int backoff_ms = 250; // doubled after each failed attempt
};

/// Chat-completion style endpoint. Credentials are read from the
/// environment variable named by auth_env and are never stored in config.
struct EndpointConfig {
    std::string base_url;                     // e.g. http://localhost:8000
    std::string path = "/v1/chat/completions";
    std::string auth_env;                     // env var holding the token
    std::string model;
    double temperature = 0.0;
    int max_tokens = 2048;
    int timeout_seconds = 60;
    int min_request_interval_ms = 0;          // simple endpoint rate limit
    RetryPolicy retry;

    void validate() const; // throws ConfigError
};

EndpointConfig load_endpoint_config(const std::filesystem::path& path);

struct ExtractionOptions {
    std::string trial_id;
    uint64_t seed = 0;
    int workers = 4;
};

/// Runs one extraction trial: for every gold task, builds the per-script
/// prompt prefix once, appends the target-schema query, sends the request,
/// and records the raw response. Requests that still fail after retries are
/// recorded as empty responses with a note, never dropped; the endpoint
/// being unreachable before any record is written raises
/// EndpointUnreachable.
///
/// Requests run on a bounded worker pool; records are written into a
/// pre-sized result vector so output order always matches gold order.
std::vector<PredictionRecord> run_extraction(const Corpus& corpus,
                                             std::span<const GoldRecord> gold,
                                             Strategy strategy,
                                             const EndpointConfig& endpoint,
                                             const ExtractionOptions& options);

} // namespace slice

#endif // SLICE_CLIENT_HPP
