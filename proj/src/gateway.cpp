#include "foundry/gateway.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "foundry/errors.hpp"
#include "foundry/records.hpp"
#include "foundry/rng.hpp"
#include "foundry/schemas.hpp"
#include "foundry/sha256.hpp"

namespace foundry {

using nlohmann::json;

const char* to_string(Purpose purpose) {
    switch (purpose) {
        case Purpose::propose_factors: return "propose_factors";
        case Purpose::critique_factors: return "critique_factors";
        case Purpose::propose_children: return "propose_children";
        case Purpose::critique_children: return "critique_children";
        case Purpose::plan_level: return "plan_level";
        case Purpose::plan_strategies: return "plan_strategies";
        case Purpose::meta_prompt: return "meta_prompt";
        case Purpose::complexify: return "complexify";
        case Purpose::generate: return "generate";
        case Purpose::requirements_critique: return "requirements_critique";
        case Purpose::refine: return "refine";
        case Purpose::double_critic_correct: return "double_critic_correct";
        case Purpose::double_critic_incorrect: return "double_critic_incorrect";
        case Purpose::classify_nodes: return "classify_nodes";
        case Purpose::score_batch: return "score_batch";
        case Purpose::assign_taxonomy: return "assign_taxonomy";
        case Purpose::corrupt_answer: return "corrupt_answer";
        case Purpose::embed: return "embed";
    }
    return "generate";
}

Purpose purpose_from_string(std::string_view s) {
    for (int i = 0; i <= int(Purpose::embed); ++i) {
        Purpose p = Purpose(i);
        if (s == to_string(p)) return p;
    }
    raise(ErrorKind::config, "unknown purpose '" + std::string(s) + "'");
}

Decoding default_decoding(Purpose purpose) {
    switch (purpose) {
        case Purpose::critique_factors:
        case Purpose::critique_children:
        case Purpose::requirements_critique:
        case Purpose::double_critic_correct:
        case Purpose::double_critic_incorrect:
        case Purpose::classify_nodes:
        case Purpose::score_batch:
        case Purpose::assign_taxonomy:
            return Decoding{0.2, 2048};
        default:
            return Decoding{1.0, 2048};
    }
}

ModelRequest make_request(Purpose purpose, std::string prompt, std::string expected_schema,
                          std::optional<Decoding> decoding) {
    ModelRequest req;
    req.purpose = purpose;
    req.prompt = std::move(prompt);
    req.decoding = decoding.value_or(default_decoding(purpose));
    req.expected_schema = std::move(expected_schema);

    char temp_buf[32];
    std::snprintf(temp_buf, sizeof(temp_buf), "%.6g", req.decoding.temperature);
    Sha256 h;
    h.update(to_string(req.purpose));
    h.update("\x1f");
    h.update(temp_buf);
    h.update("\x1f");
    h.update(std::to_string(req.decoding.max_output_tokens));
    h.update("\x1f");
    h.update(req.expected_schema);
    h.update("\x1f");
    h.update(req.prompt);
    auto digest = h.digest();
    static const char* hex = "0123456789abcdef";
    req.call_id.reserve(64);
    for (std::uint8_t byte : digest) {
        req.call_id.push_back(hex[byte >> 4]);
        req.call_id.push_back(hex[byte & 0xf]);
    }
    return req;
}

namespace {

Usage estimate_usage(const std::string& prompt, const std::string& raw) {
    return Usage{std::int64_t(prompt.size() / 4 + 1), std::int64_t(raw.size() / 4 + 1)};
}

std::string repair_prompt(const std::string& original, const std::string& parse_error,
                          const std::string& previous_raw) {
    std::string out = original;
    out += "\n\nYour previous reply could not be used. Parse error: ";
    out += parse_error;
    out += "\nPrevious reply:\n";
    out += previous_raw;
    out += "\nReply again with exactly one fenced ```json block of the requested shape.";
    return out;
}

}  // namespace

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayConfig config)
    : provider_(std::move(provider)),
      config_(std::move(config)),
      in_flight_(std::max(1, std::min(config_.max_in_flight, 4096))) {
    if (config_.replay_dir.empty() && provider_ == nullptr) {
        raise(ErrorKind::config, "gateway needs a provider unless replay_dir is set");
    }
    if (!config_.record_dir.empty()) {
        std::filesystem::create_directories(config_.record_dir);
    }
}

void Gateway::log_call(Purpose purpose, const std::string& call_id) {
    std::lock_guard<std::mutex> lock(log_mutex_);
    log_.push_back({purpose, call_id});
    counts_[purpose] += 1;
}

std::vector<CallLogEntry> Gateway::call_log() const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    return log_;
}

std::size_t Gateway::call_count(Purpose purpose) const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    auto it = counts_.find(purpose);
    return it == counts_.end() ? 0 : it->second;
}

std::size_t Gateway::total_call_count() const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    return log_.size();
}

void Gateway::reset_call_log() {
    std::lock_guard<std::mutex> lock(log_mutex_);
    log_.clear();
    counts_.clear();
}

std::size_t Gateway::fixtures_written() const {
    std::lock_guard<std::mutex> lock(fixture_mutex_);
    return fixtures_written_;
}

std::string Gateway::transport_complete(const ModelRequest& request, const std::string& prompt) {
    ModelRequest effective = request;
    effective.prompt = prompt;
    Rng jitter(derive_seed(fnv1a64(request.call_id), "backoff"));
    for (int attempt = 1;; ++attempt) {
        try {
            in_flight_.acquire();
            struct Release {
                std::counting_semaphore<4096>& sem;
                ~Release() { sem.release(); }
            } release{in_flight_};
            return provider_->complete(effective);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::transport || attempt >= config_.max_attempts) throw;
            double scale = 0.5 + 0.5 * jitter.unit();
            auto delay = std::chrono::milliseconds(
                std::int64_t(double(config_.backoff_base_ms) * double(1 << (attempt - 1)) * scale));
            if (delay.count() > 0) std::this_thread::sleep_for(delay);
        }
    }
}

ModelResponse Gateway::replay_complete(const ModelRequest& request) {
    std::filesystem::path path = std::filesystem::path(config_.replay_dir) / (request.call_id + ".json");
    if (!std::filesystem::exists(path)) {
        raise(ErrorKind::missing_fixture, "no fixture for call_id " + request.call_id + " (purpose " +
                                              to_string(request.purpose) + ")");
    }
    json fixture = json::parse(read_file(path));
    ModelResponse resp;
    resp.call_id = request.call_id;
    resp.raw_text = fixture.at("response").at("raw_text").get<std::string>();
    resp.usage.input_tokens = fixture.at("response").value("input_tokens", std::int64_t{0});
    resp.usage.output_tokens = fixture.at("response").value("output_tokens", std::int64_t{0});
    resp.attempt_count = 1;
    if (!request.expected_schema.empty()) {
        std::string err;
        auto parsed = extract_fenced_json(resp.raw_text, &err);
        if (!parsed) {
            raise(ErrorKind::malformed_output,
                  "fixture " + request.call_id + " does not parse: " + err + "; raw: " + resp.raw_text);
        }
        if (auto schema_err = check_schema(request.expected_schema, *parsed)) {
            raise(ErrorKind::malformed_output,
                  "fixture " + request.call_id + " fails schema: " + *schema_err);
        }
        resp.parsed = std::move(*parsed);
    }
    return resp;
}

void Gateway::record_fixture(const ModelRequest& request, const std::string& raw_text, const Usage& usage,
                             const std::string& model_tag) {
    if (config_.record_dir.empty()) return;
    json fixture;
    fixture["request"] = {{"call_id", request.call_id},
                          {"purpose", to_string(request.purpose)},
                          {"prompt", request.prompt},
                          {"temperature", request.decoding.temperature},
                          {"max_output_tokens", request.decoding.max_output_tokens},
                          {"expected_schema", request.expected_schema}};
    fixture["response"] = {{"raw_text", raw_text},
                           {"input_tokens", usage.input_tokens},
                           {"output_tokens", usage.output_tokens}};
    if (!model_tag.empty()) fixture["response"]["model_tag"] = model_tag;

    std::lock_guard<std::mutex> lock(fixture_mutex_);
    std::filesystem::path path = std::filesystem::path(config_.record_dir) / (request.call_id + ".json");
    if (std::filesystem::exists(path)) {
        json existing = json::parse(read_file(path));
        if (existing.at("response").at("raw_text").get<std::string>() != raw_text) {
            raise(ErrorKind::fixture_conflict,
                  "call_id " + request.call_id + " already recorded with a different response");
        }
        return;
    }
    write_file(path, fixture.dump(2));
    ++fixtures_written_;
}

ModelResponse Gateway::complete(const ModelRequest& request) {
    ModelRequest req = request;
    if (req.call_id.empty()) {
        req = make_request(req.purpose, req.prompt, req.expected_schema, req.decoding);
    }
    log_call(req.purpose, req.call_id);
    if (replay_mode()) return replay_complete(req);

    std::string prompt = req.prompt;
    int replies = 0;
    for (int parse_attempt = 0;; ++parse_attempt) {
        std::string raw = transport_complete(req, prompt);
        ++replies;

        ModelResponse resp;
        resp.call_id = req.call_id;
        resp.raw_text = raw;
        resp.usage = estimate_usage(prompt, raw);
        resp.attempt_count = replies;

        if (req.expected_schema.empty()) {
            record_fixture(req, raw, resp.usage, "");
            return resp;
        }

        std::string err;
        auto parsed = extract_fenced_json(raw, &err);
        if (parsed.has_value()) {
            auto schema_err = check_schema(req.expected_schema, *parsed);
            if (!schema_err.has_value()) {
                resp.parsed = std::move(*parsed);
                record_fixture(req, raw, resp.usage, "");
                return resp;
            }
            err = *schema_err;
        }
        if (parse_attempt >= config_.parse_retries) {
            raise(ErrorKind::malformed_output, "call " + req.call_id + " (purpose " +
                                                   to_string(req.purpose) + ") failed schema '" +
                                                   req.expected_schema + "' after " +
                                                   std::to_string(replies) + " replies: " + err +
                                                   "; raw: " + raw);
        }
        prompt = repair_prompt(req.prompt, err, raw);
    }
}

std::vector<EmbeddingVector> Gateway::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) raise(ErrorKind::precondition, "embed() requires a nonempty text list");

    auto check_vector = [&](const EmbeddingVector& v, const std::string& text) {
        for (double x : v.values) {
            if (!std::isfinite(x)) {
                raise(ErrorKind::transport, "non-finite embedding entry for text '" + text + "'");
            }
        }
        std::lock_guard<std::mutex> lock(embed_mutex_);
        auto [it, inserted] = embed_lengths_.emplace(v.model_tag, v.values.size());
        if (!inserted && it->second != v.values.size()) {
            raise(ErrorKind::transport, "embedding length mismatch for model_tag '" + v.model_tag + "'");
        }
    };

    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());

    if (replay_mode()) {
        for (const auto& text : texts) {
            ModelRequest req = make_request(Purpose::embed, text);
            log_call(Purpose::embed, req.call_id);
            ModelResponse resp = replay_complete(req);
            json payload = json::parse(resp.raw_text);
            EmbeddingVector v;
            v.values = payload.at("values").get<std::vector<double>>();
            v.model_tag = payload.value("model_tag", "replay");
            check_vector(v, text);
            out.push_back(std::move(v));
        }
        return out;
    }

    std::vector<std::vector<double>> raw;
    Rng jitter(derive_seed(fnv1a64(texts.front()), "embed-backoff", texts.size()));
    for (int attempt = 1;; ++attempt) {
        try {
            in_flight_.acquire();
            struct Release {
                std::counting_semaphore<4096>& sem;
                ~Release() { sem.release(); }
            } release{in_flight_};
            raw = provider_->embed(texts);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::transport || attempt >= config_.max_attempts) throw;
            double scale = 0.5 + 0.5 * jitter.unit();
            auto delay = std::chrono::milliseconds(
                std::int64_t(double(config_.backoff_base_ms) * double(1 << (attempt - 1)) * scale));
            if (delay.count() > 0) std::this_thread::sleep_for(delay);
        }
    }
    if (raw.size() != texts.size()) {
        raise(ErrorKind::transport, "provider returned " + std::to_string(raw.size()) +
                                        " embeddings for " + std::to_string(texts.size()) + " texts");
    }

    std::string tag = provider_->model_tag();
    for (std::size_t i = 0; i < texts.size(); ++i) {
        ModelRequest req = make_request(Purpose::embed, texts[i]);
        log_call(Purpose::embed, req.call_id);
        EmbeddingVector v{raw[i], tag};
        check_vector(v, texts[i]);
        json payload = {{"values", v.values}, {"model_tag", tag}};
        record_fixture(req, payload.dump(), estimate_usage(texts[i], ""), tag);
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t record_fixtures(const Gateway& gateway, const std::filesystem::path& directory) {
    (void)gateway;
    std::size_t count = 0;
    if (!std::filesystem::exists(directory)) return 0;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.path().extension() != ".json") continue;
        json fixture = json::parse(read_file(entry.path()));
        std::string call_id = fixture.at("request").at("call_id").get<std::string>();
        if (entry.path().stem().string() != call_id) {
            raise(ErrorKind::fixture_conflict,
                  "fixture file " + entry.path().filename().string() + " does not match call_id " + call_id);
        }
        ++count;
    }
    return count;
}

}  // namespace foundry
