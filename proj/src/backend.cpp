#include "sgrwr/agents/backend.hpp"

#include "sgrwr/agents/turns.hpp"

namespace sgrwr::agents {

std::string complete(Backend& backend, const Messages& messages) {
    if (messages.empty()) throw Error("completion request needs at least a system message");
    if (messages.front().role != Role::System)
        throw Error("completion request must start with the system message");
    Role expect = Role::User;
    for (size_t i = 1; i < messages.size(); ++i) {
        const ChatMessage& m = messages[i];
        if (m.role == Role::System) throw Error("completion request has more than one system message");
        if (m.role != expect) throw Error("user and assistant messages must alternate");
        if (m.content.empty()) throw Error("chat message contents must be non-empty");
        expect = expect == Role::User ? Role::Assistant : Role::User;
    }
    if (messages.size() < 2 || messages.back().role != Role::User)
        throw Error("completion request must end with a user message");
    std::string reply = backend.complete_raw(messages);
    if (trim(reply).empty())
        throw BackendRejected("backend '" + backend.name() + "' returned an empty completion", 0);
    return reply;
}

std::string ScriptedBackend::complete_raw(const Messages& messages) {
    (void)messages;
    if (cursor_ >= replies_.size())
        throw ScriptExhausted("scripted backend '" + label_ + "' has no reply for call " +
                              std::to_string(cursor_ + 1) + " (transcript holds " +
                              std::to_string(replies_.size()) + ")");
    return replies_[cursor_++];
}

}  // namespace sgrwr::agents
