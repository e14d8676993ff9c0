#include "revconf/events.hpp"

#include <algorithm>

#include "revconf/errors.hpp"

namespace revconf {

bool event_table::valid_token(std::string_view name) {
    if (name.empty()) return false;
    for (unsigned char c : name) {
        if (c < 0x21 || c == 0x7f || c == ',') return false;
    }
    return true;
}

event_table::event_table(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > max_universe)
        throw domain_error("universe exceeds " + std::to_string(max_universe) + " events");
    for (const auto& n : names_) {
        if (!valid_token(n))
            throw domain_error("invalid event name \"" + n +
                               "\" (names are nonempty, no whitespace or commas)");
    }
    std::sort(names_.begin(), names_.end());
    auto dup = std::adjacent_find(names_.begin(), names_.end());
    if (dup != names_.end()) throw domain_error("duplicate event name \"" + *dup + "\"");
}

std::optional<std::size_t> event_table::index(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t event_table::index_checked(std::string_view name) const {
    auto i = index(name);
    if (!i) throw domain_error("unknown event \"" + std::string(name) + "\"");
    return *i;
}

std::vector<std::string> config_names(const event_table& t, event_set x) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (contains_event(x, i)) out.push_back(t.name(i));
    return out;
}

static std::string join_members(const event_table& t, event_set x, char sep) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!contains_event(x, i)) continue;
        if (!first) out += sep;
        out += t.name(i);
        first = false;
    }
    out += '}';
    return out;
}

std::string format_config(const event_table& t, event_set x) { return join_members(t, x, ','); }

std::string config_token(const event_table& t, event_set x) { return join_members(t, x, '.'); }

}  // namespace revconf
