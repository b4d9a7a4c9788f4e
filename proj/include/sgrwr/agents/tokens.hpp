#pragma once

#include <functional>
#include <string>

#include "sgrwr/agents/messages.hpp"

namespace sgrwr::agents {

// Pluggable tokenizer interface. The default approximation charges one
// token per four characters, rounded up.
using TokenCounter = std::function<int(const std::string&)>;

inline int approx_count_tokens(const std::string& text) {
    return static_cast<int>((text.size() + 3) / 4);
}

inline TokenCounter default_token_counter() { return approx_count_tokens; }

inline int messages_tokens(const Messages& messages, const TokenCounter& counter) {
    int total = 0;
    for (const ChatMessage& m : messages) total += counter(m.content);
    return total;
}

// Running token tally for one episode iteration.
struct TokenTally {
    int in = 0;
    int out = 0;
    void add_call(const Messages& messages, const std::string& reply, const TokenCounter& counter) {
        in += messages_tokens(messages, counter);
        out += counter(reply);
    }
};

}  // namespace sgrwr::agents
