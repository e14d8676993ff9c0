#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revconf {

// A set of events, one bit per event index in the owning event_table.
// All structure-level operations are bit arithmetic on these masks.
using event_set = std::uint64_t;

inline constexpr std::size_t max_universe = 64;

constexpr bool subset_of(event_set a, event_set b) { return (a & ~b) == 0; }
constexpr bool proper_subset_of(event_set a, event_set b) { return a != b && subset_of(a, b); }
constexpr event_set set_difference(event_set a, event_set b) { return a & ~b; }
constexpr event_set sym_difference(event_set a, event_set b) { return a ^ b; }
constexpr int set_size(event_set a) { return std::popcount(a); }
constexpr bool contains_event(event_set a, std::size_t i) { return (a >> i) & 1u; }
constexpr event_set single_event(std::size_t i) { return event_set{1} << i; }

// Canonical order on configurations: by cardinality, then lexicographically
// on the sorted event sequence. Event indices follow name order, so the set
// owning the lowest differing index comes first.
constexpr bool config_less(event_set a, event_set b) {
    int ca = set_size(a), cb = set_size(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    event_set diff = a ^ b;
    return (a & (diff & -diff)) != 0;
}

struct config_canonical_less {
    constexpr bool operator()(event_set a, event_set b) const { return config_less(a, b); }
};

// Immutable universe of event names. Names are sorted, so index order and
// lexicographic name order coincide everywhere.
class event_table {
public:
    event_table() = default;
    // Sorts the given names. Throws domain_error on duplicates, invalid
    // tokens, or more than max_universe events.
    explicit event_table(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index(std::string_view name) const;
    // Like index(), but throws domain_error naming the unknown event.
    std::size_t index_checked(std::string_view name) const;
    event_set universe() const {
        return names_.size() == max_universe ? ~event_set{0}
                                             : (event_set{1} << names_.size()) - 1;
    }

    bool operator==(const event_table&) const = default;

    // Tokens are nonempty and contain no whitespace, commas, or control bytes.
    static bool valid_token(std::string_view name);

private:
    std::vector<std::string> names_;
};

// Display form, e.g. "{a,c}" or "{}".
std::string format_config(const event_table& t, event_set x);
// Token form usable as an event name, e.g. "{a.c}".
std::string config_token(const event_table& t, event_set x);
// Names of the members, sorted.
std::vector<std::string> config_names(const event_table& t, event_set x);

}  // namespace revconf
