#pragma once

#include <string>
#include <vector>

#include "foundry/gateway.hpp"

namespace foundry {

struct HttpProviderConfig {
    std::string endpoint = "http://127.0.0.1:8080";
    std::string chat_path = "/v1/chat/completions";
    std::string embed_path = "/v1/embeddings";
    std::string chat_model = "chat-default";
    std::string embedding_model = "embed-default";
    std::string api_key_env = "FOUNDRY_API_KEY";
    int timeout_seconds = 120;
};

// Chat-completion + embedding client for an OpenAI-style HTTP service.
// Delivery failures surface as Error(transport); retry policy lives in the
// gateway, not here.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    std::string complete(const ModelRequest& request) override;
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    std::string model_tag() const override { return config_.embedding_model; }

private:
    HttpProviderConfig config_;
    std::string api_key_;
};

}  // namespace foundry
