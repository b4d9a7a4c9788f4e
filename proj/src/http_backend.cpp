#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sgrwr/agents/backend.hpp"

namespace sgrwr::agents {

namespace {

struct ParsedUrl {
    std::string scheme_host;  // e.g. "http://localhost:8000"
    std::string path;         // e.g. "/v1/chat/completions"
};

ParsedUrl split_url(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw BackendUnavailable("endpoint URL needs a scheme: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class LiveBackend : public Backend {
  public:
    explicit LiveBackend(BackendConfig config) : config_(std::move(config)) {
        if (config_.endpoint_url.empty())
            throw BackendUnavailable("live backend needs an endpoint URL");
        if (config_.model_name.empty())
            throw BackendUnavailable("live backend needs a model name");
    }

    std::string complete_raw(const Messages& messages) override {
        nlohmann::json body;
        body["model"] = config_.model_name;
        body["temperature"] = config_.temperature;
        body["seed"] = config_.seed;
        body["messages"] = nlohmann::json::array();
        for (const ChatMessage& m : messages)
            body["messages"].push_back({{"role", role_name(m.role)}, {"content", m.content}});

        ParsedUrl url = split_url(config_.endpoint_url);
        httplib::Client client(url.scheme_host);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(config_.timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(config_.timeout));
        httplib::Headers headers;
        if (const char* key = std::getenv("SGRWR_API_KEY"))
            headers.emplace("Authorization", std::string("Bearer ") + key);

        std::string payload = body.dump();
        httplib::Result res;
        for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(100) * (1 << (attempt - 1)));
            res = client.Post(url.path, headers, payload, "application/json");
            if (res) break;  // transport succeeded; status handled below
        }
        if (!res)
            throw BackendUnavailable("endpoint " + config_.endpoint_url + " unreachable after " +
                                     std::to_string(config_.max_retries + 1) + " attempts (" +
                                     httplib::to_string(res.error()) + ")");
        if (res->status / 100 != 2) {
            std::string excerpt = res->body.substr(0, 200);
            throw BackendRejected("endpoint returned status " + std::to_string(res->status) + ": " +
                                      excerpt,
                                  res->status);
        }
        nlohmann::json reply;
        try {
            reply = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error&) {
            throw BackendRejected("endpoint returned a non-JSON body: " + res->body.substr(0, 200),
                                  res->status);
        }
        try {
            if (reply.contains("choices"))
                return reply["choices"].at(0).at("message").at("content").get<std::string>();
            if (reply.contains("content") && reply["content"].is_string())
                return reply["content"].get<std::string>();
        } catch (const nlohmann::json::exception&) {
        }
        throw BackendRejected("endpoint reply carries no completion text: " + res->body.substr(0, 200),
                              res->status);
    }

    std::string name() const override { return "live:" + config_.model_name; }

  private:
    BackendConfig config_;
};

}  // namespace

std::unique_ptr<Backend> make_live_backend(const BackendConfig& config) {
    return std::make_unique<LiveBackend>(config);
}

}  // namespace sgrwr::agents
