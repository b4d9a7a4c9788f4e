#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "sgrwr/agents/messages.hpp"

namespace sgrwr::agents {

struct BackendConfig {
    std::string endpoint_url;
    std::string model_name;
    double temperature = 0.0;
    int seed = 0;
    std::chrono::milliseconds timeout{30000};
    int max_retries = 3;
};

struct BackendUnavailable : Error {
    explicit BackendUnavailable(const std::string& what) : Error(what) {}
};

struct BackendRejected : Error {
    int status = 0;
    BackendRejected(const std::string& what, int status_) : Error(what), status(status_) {}
};

struct ScriptExhausted : Error {
    explicit ScriptExhausted(const std::string& what) : Error(what) {}
};

class Backend {
  public:
    virtual ~Backend() = default;
    // Raw completion; call through sgrwr::agents::complete() so message
    // invariants are checked uniformly.
    virtual std::string complete_raw(const Messages& messages) = 0;
    virtual std::string name() const = 0;
    virtual bool shareable() const { return true; }
};

// Checks the message-shape preconditions (exactly one system message, at
// the front; user/assistant alternate; contents non-empty), invokes the
// backend, and rejects empty completions.
std::string complete(Backend& backend, const Messages& messages);

// Replays a fixed list of assistant replies. Stateful, one per episode.
class ScriptedBackend : public Backend {
  public:
    explicit ScriptedBackend(std::vector<std::string> replies, std::string label = "scripted")
        : replies_(std::move(replies)), label_(std::move(label)) {}
    std::string complete_raw(const Messages& messages) override;
    std::string name() const override { return label_; }
    bool shareable() const override { return false; }
    size_t consumed() const { return cursor_; }

  private:
    std::vector<std::string> replies_;
    size_t cursor_ = 0;
    std::string label_;
};

// Decorator counting completions, for call-budget assertions.
class CountingBackend : public Backend {
  public:
    explicit CountingBackend(std::shared_ptr<Backend> inner) : inner_(std::move(inner)) {}
    std::string complete_raw(const Messages& messages) override {
        ++calls_;
        return inner_->complete_raw(messages);
    }
    std::string name() const override { return inner_->name(); }
    bool shareable() const override { return inner_->shareable(); }
    int calls() const { return calls_.load(); }

  private:
    std::shared_ptr<Backend> inner_;
    std::atomic<int> calls_{0};
};

// JSON-over-HTTP chat backend. Reads the API key from the SGRWR_API_KEY
// environment variable; it is never stored in configuration.
std::unique_ptr<Backend> make_live_backend(const BackendConfig& config);

}  // namespace sgrwr::agents
