#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "foundry/types.hpp"

namespace foundry {

// Pipeline step issuing a model call. Decoding defaults and call logs key off this.
enum class Purpose {
    propose_factors,
    critique_factors,
    propose_children,
    critique_children,
    plan_level,
    plan_strategies,
    meta_prompt,
    complexify,
    generate,
    requirements_critique,
    refine,
    double_critic_correct,
    double_critic_incorrect,
    classify_nodes,
    score_batch,
    assign_taxonomy,
    corrupt_answer,
    embed,
};

const char* to_string(Purpose purpose);
Purpose purpose_from_string(std::string_view s);

struct Decoding {
    double temperature = 1.0;
    int max_output_tokens = 2048;

    bool operator==(const Decoding&) const = default;
};

// 1.0 for proposal-style steps, 0.2 for critic/verdict-style steps.
Decoding default_decoding(Purpose purpose);

struct ModelRequest {
    std::string call_id;  // hash of (purpose, prompt, decoding, schema)
    Purpose purpose = Purpose::generate;
    std::string prompt;
    Decoding decoding;
    std::string expected_schema;  // empty = free text
};

ModelRequest make_request(Purpose purpose, std::string prompt, std::string expected_schema = "",
                          std::optional<Decoding> decoding = std::nullopt);

struct Usage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

struct ModelResponse {
    std::string call_id;
    std::string raw_text;
    std::optional<nlohmann::json> parsed;  // set iff expected_schema was set and parsing succeeded
    Usage usage;
    int attempt_count = 1;
};

struct EmbeddingVector {
    std::vector<double> values;
    std::string model_tag;
};

// Transport-level backend: a live HTTP service or an in-process test double.
class Provider {
public:
    virtual ~Provider() = default;

    // Returns the raw model reply for the rendered prompt; throws
    // Error(transport) on delivery failure.
    virtual std::string complete(const ModelRequest& request) = 0;

    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;

    virtual std::string model_tag() const { return "provider"; }
};

struct GatewayConfig {
    int parse_retries = 2;    // schema-repair re-prompts after the first reply
    int max_attempts = 5;     // transport attempts per prompt, backoff in between
    int backoff_base_ms = 200;
    int max_in_flight = 8;
    std::string record_dir;   // when set, persist one fixture per call_id
    std::string replay_dir;   // when set, serve fixtures only; no provider access
};

struct CallLogEntry {
    Purpose purpose;
    std::string call_id;
};

// Uniform client for chat-completion and embedding backends with bounded
// concurrency, retry/repair handling, and deterministic record/replay.
class Gateway {
public:
    Gateway(std::shared_ptr<Provider> provider, GatewayConfig config);

    ModelResponse complete(const ModelRequest& request);
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts);

    bool replay_mode() const { return !config_.replay_dir.empty(); }
    std::size_t fixtures_written() const;

    std::vector<CallLogEntry> call_log() const;
    std::size_t call_count(Purpose purpose) const;
    std::size_t total_call_count() const;
    void reset_call_log();

private:
    std::string transport_complete(const ModelRequest& request, const std::string& prompt);
    ModelResponse replay_complete(const ModelRequest& request);
    void record_fixture(const ModelRequest& request, const std::string& raw_text, const Usage& usage,
                        const std::string& model_tag);
    void log_call(Purpose purpose, const std::string& call_id);

    std::shared_ptr<Provider> provider_;
    GatewayConfig config_;
    std::counting_semaphore<4096> in_flight_;

    mutable std::mutex log_mutex_;
    std::vector<CallLogEntry> log_;
    std::map<Purpose, std::size_t> counts_;

    mutable std::mutex fixture_mutex_;
    std::size_t fixtures_written_ = 0;

    mutable std::mutex embed_mutex_;
    std::map<std::string, std::size_t> embed_lengths_;  // model_tag -> dimension
};

// Writes nothing itself; reports how many fixtures the run persisted so far.
// Present so callers can assert the record contract after a live run.
std::size_t record_fixtures(const Gateway& gateway, const std::filesystem::path& directory);

}  // namespace foundry
