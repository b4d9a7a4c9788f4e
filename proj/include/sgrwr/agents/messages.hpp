#pragma once

#include <string>
#include <vector>

#include "sgrwr/attr_value.hpp"

namespace sgrwr::agents {

enum class Role { System, User, Assistant };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::System: return "system";
        case Role::User: return "user";
        default: return "assistant";
    }
}

struct ChatMessage {
    Role role = Role::User;
    std::string content;
};

inline ChatMessage system_msg(std::string content) { return {Role::System, std::move(content)}; }
inline ChatMessage user_msg(std::string content) { return {Role::User, std::move(content)}; }
inline ChatMessage assistant_msg(std::string content) { return {Role::Assistant, std::move(content)}; }

using Messages = std::vector<ChatMessage>;

}  // namespace sgrwr::agents
