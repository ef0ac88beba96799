#pragma once

#include "oamatch/prompt.hpp"

#include <filesystem>

namespace oamatch {

struct BackendConfig {
    enum class Kind { Mock, Remote };
    Kind kind = Kind::Mock;
    std::string endpoint;          // base URL, e.g. http://localhost:8080/v1
    std::string model = "gpt-4";
    double temperature = 0.0;
    int timeout_seconds = 60;
    int max_retries = 3;
    int retry_backoff_ms = 1000;   // doubles per attempt
    std::string api_key_env = "OPENAI_API_KEY";
};

struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BackendRefused : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Turn {
    std::string request;
    std::string response;
    long latency_ms = 0;
    bool cache_hit = false;
};

struct Transcript {
    StrategyId strategy;
    std::pair<std::string, std::string> pair;
    std::vector<Turn> turns;
};

// Content-addressed directory of JSON records {key, request, response,
// timestamp}, one file per entry, written atomically (temp + rename).
// Unreadable entries count as misses with a warning on stderr.
class ResponseCache {
public:
    explicit ResponseCache(std::filesystem::path dir);

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& request,
             const std::string& response) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

std::string sha256_hex(std::string_view data);

// Deterministic offline matcher: reads the verbalized triple blocks back
// out of the conversation and answers with `X = Y` lines for every pair
// of entities whose case-folded names agree across the two ontologies.
// Doubles as the StringEquiv baseline. Per-entity queries get the single
// best match or "no match".
std::string mock_respond(const std::vector<std::string>& conversation);

// Runs a plan against the configured backend, one response per message,
// strictly in conversation order. Each turn is keyed by a hash of the
// full conversation prefix plus model and temperature; cache hits skip
// the network entirely.
Transcript complete(const PromptPlan& plan, const BackendConfig& cfg,
                    const ResponseCache* cache);

} // namespace oamatch
