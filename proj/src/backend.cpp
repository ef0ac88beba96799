#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "oamatch/backend.hpp"

#include "oamatch/ontology_io.hpp"

#include "httplib.h"
#include "json.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

namespace oamatch {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
    auto path = dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        json record = json::parse(in);
        return record.at("response").get<std::string>();
    } catch (const std::exception& e) {
        std::cerr << "warning: corrupt cache entry " << path.string() << " (" << e.what()
                  << "), treating as miss\n";
        return std::nullopt;
    }
}

void ResponseCache::put(const std::string& key, const std::string& request,
                        const std::string& response) const {
    json record{{"key", key},
                {"request", request},
                {"response", response},
                {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                                  std::chrono::system_clock::now().time_since_epoch())
                                  .count()}};
    auto path = dir_ / (key + ".json");
    // per-thread temp name: concurrent writers of the same key must not
    // collide, and whichever rename lands last wins with identical content
    std::ostringstream suffix;
    suffix << "." << std::this_thread::get_id() << ".tmp";
    auto tmp = dir_ / (key + suffix.str());
    {
        std::ofstream out(tmp);
        out << record.dump(2) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::cerr << "warning: cache write failed for " << path << " (" << ec.message() << ")\n";
        std::filesystem::remove(tmp, ec);
    }
}

namespace {

// `Predicate (Subject, Object)` with optional spaces
const std::regex kTripleLine(R"(^\s*([^()]+?)\s*\(\s*([^,()]+?)\s*,\s*([^()]+?)\s*\)\s*$)");

struct PromptedOntologies {
    // case-folded name -> surface as written, per side
    std::map<std::string, std::string> side1, side2;
};

PromptedOntologies parse_blocks(const std::vector<std::string>& conversation) {
    PromptedOntologies out;
    int block = 0; // 0 none, 1/2 ontology blocks; survives message boundaries
    for (const auto& message : conversation) {
        std::size_t start = 0;
        while (start <= message.size()) {
            std::size_t end = message.find('\n', start);
            std::string line = message.substr(
                start, end == std::string::npos ? std::string::npos : end - start);
            if (line.find(kOntology1Header) != std::string::npos) {
                block = 1;
            } else if (line.find(kOntology2Header) != std::string::npos) {
                block = 2;
            } else if (block != 0) {
                std::smatch m;
                if (std::regex_match(line, m, kTripleLine)) {
                    auto& side = block == 1 ? out.side1 : out.side2;
                    auto note = [&](const std::string& name) {
                        side.emplace(case_fold(name), name);
                    };
                    if (m[1].str() == "Is-a") {
                        note(m[2].str());
                        note(m[3].str());
                    } else {
                        note(m[1].str());
                        note(m[2].str());
                        note(m[3].str());
                    }
                }
            }
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }
    return out;
}

} // namespace

std::string mock_respond(const std::vector<std::string>& conversation) {
    if (conversation.empty()) return "";
    PromptedOntologies blocks = parse_blocks(conversation);

    // per-entity query turn?
    const std::string& last = conversation.back();
    if (last.rfind("For \"", 0) == 0) {
        auto close = last.find('"', 5);
        if (close == std::string::npos) return "";
        std::string name = last.substr(5, close - 5);
        auto it = blocks.side2.find(case_fold(name));
        if (it == blocks.side2.end()) return "no match";
        return name + " = " + it->second;
    }

    std::vector<std::string> lines;
    for (const auto& [folded, surface1] : blocks.side1) {
        auto it = blocks.side2.find(folded);
        if (it != blocks.side2.end()) lines.push_back(surface1 + " = " + it->second);
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

namespace {

std::string remote_complete(const json& body, const BackendConfig& cfg) {
    auto scheme_end = cfg.endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw NetworkError("endpoint must be an http(s) URL: " + cfg.endpoint);
    auto path_start = cfg.endpoint.find('/', scheme_end + 3);
    std::string base = path_start == std::string::npos ? cfg.endpoint
                                                       : cfg.endpoint.substr(0, path_start);
    std::string prefix =
        path_start == std::string::npos ? "" : cfg.endpoint.substr(path_start);
    if (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client client(base);
    client.set_connection_timeout(cfg.timeout_seconds);
    client.set_read_timeout(cfg.timeout_seconds);
    httplib::Headers headers;
    if (const char* key = std::getenv(cfg.api_key_env.c_str()); key && *key)
        headers.emplace("Authorization", std::string("Bearer ") + key);

    std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt < std::max(1, cfg.max_retries); ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg.retry_backoff_ms << (attempt - 1)));
        auto res = client.Post(prefix + "/chat/completions", headers, payload,
                               "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status < 200 || res->status >= 300)
            throw BackendRefused("backend returned status " + std::to_string(res->status) +
                                 ": " + res->body);
        try {
            json reply = json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw BackendRefused(std::string("unparseable completion body: ") + e.what());
        }
    }
    throw NetworkError("request to " + cfg.endpoint + " failed after " +
                       std::to_string(cfg.max_retries) + " attempts: " + last_error);
}

} // namespace

Transcript complete(const PromptPlan& plan, const BackendConfig& cfg,
                    const ResponseCache* cache) {
    Transcript transcript;
    transcript.strategy = plan.strategy;
    transcript.pair = plan.pair;

    json messages = json::array();
    std::vector<std::string> user_texts;

    for (const auto& msg : plan.messages) {
        messages.push_back({{"role", "user"}, {"content", msg.text}});
        user_texts.push_back(msg.text);

        json request{{"model", cfg.model},
                     {"temperature", cfg.temperature},
                     {"messages", messages}};
        std::string request_str = request.dump();
        std::string key = sha256_hex(request_str);

        Turn turn;
        turn.request = request_str;
        auto started = std::chrono::steady_clock::now();
        if (cache) {
            if (auto hit = cache->get(key)) {
                turn.response = *hit;
                turn.cache_hit = true;
            }
        }
        if (!turn.cache_hit) {
            turn.response = cfg.kind == BackendConfig::Kind::Mock
                                ? mock_respond(user_texts)
                                : remote_complete(request, cfg);
            if (cache) cache->put(key, request_str, turn.response);
        }
        turn.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();

        messages.push_back({{"role", "assistant"}, {"content", turn.response}});
        transcript.turns.push_back(std::move(turn));
    }
    return transcript;
}

} // namespace oamatch
