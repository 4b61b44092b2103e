#include "foundry/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "foundry/errors.hpp"

namespace foundry {

using nlohmann::json;

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    if (!config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
    }
}

namespace {

json post_json(const HttpProviderConfig& config, const std::string& api_key, const std::string& path,
               const json& body) {
    httplib::Client client(config.endpoint);
    client.set_connection_timeout(config.timeout_seconds);
    client.set_read_timeout(config.timeout_seconds);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        raise(ErrorKind::transport, "no response from " + config.endpoint + path);
    }
    if (res->status != 200) {
        raise(ErrorKind::transport, "HTTP " + std::to_string(res->status) + " from " + path + ": " + res->body);
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
        raise(ErrorKind::transport, "unparseable response body from " + path);
    }
    return parsed;
}

}  // namespace

std::string HttpProvider::complete(const ModelRequest& request) {
    json body = {{"model", config_.chat_model},
                 {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})},
                 {"temperature", request.decoding.temperature},
                 {"max_tokens", request.decoding.max_output_tokens}};
    json reply = post_json(config_, api_key_, config_.chat_path, body);
    try {
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        raise(ErrorKind::transport, std::string("unexpected completion payload: ") + e.what());
    }
}

std::vector<std::vector<double>> HttpProvider::embed(const std::vector<std::string>& texts) {
    json body = {{"model", config_.embedding_model}, {"input", texts}};
    json reply = post_json(config_, api_key_, config_.embed_path, body);
    std::vector<std::vector<double>> out;
    try {
        for (const auto& item : reply.at("data")) {
            out.push_back(item.at("embedding").get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        raise(ErrorKind::transport, std::string("unexpected embedding payload: ") + e.what());
    }
    return out;
}

}  // namespace foundry
