#pragma once

#include <string>
#include <vector>

#include "revconf/structures.hpp"

namespace fixtures {

using revconf::config_structure;
using revconf::event_set;
using revconf::event_table;

// Configurations written as strings of single-letter event names: "ab" is
// {a,b}, "" is the empty configuration.
inline event_set mask_of(const event_table& t, const std::string& events) {
    event_set x = 0;
    for (char ch : events) x |= revconf::single_event(t.index_checked(std::string(1, ch)));
    return x;
}

inline config_structure make_cs(std::vector<std::string> names,
                                const std::vector<std::string>& configs) {
    event_table t(std::move(names));
    std::vector<event_set> masks;
    masks.reserve(configs.size());
    for (const auto& s : configs) masks.push_back(mask_of(t, s));
    return {std::move(t), std::move(masks)};
}

// The powerset of {a,b,c} minus one member. Pairwise related by symmetric
// residuation; each fails exactly one stability axiom.
inline config_structure cube_top_removed() {
    return make_cs({"a", "b", "c"}, {"", "a", "b", "c", "ab", "ac", "bc"});
}
inline config_structure cube_c_removed() {
    return make_cs({"a", "b", "c"}, {"", "a", "b", "ab", "ac", "bc", "abc"});
}
inline config_structure cube_ab_removed() {
    return make_cs({"a", "b", "c"}, {"", "a", "b", "c", "ac", "bc", "abc"});
}

// Stable; invariant under symmetric residuation by {b}.
inline config_structure fixed_point_example() {
    return make_cs({"a", "b", "c"}, {"", "a", "b", "c", "ab", "bc"});
}

// Stable, four primes {a},{b},{a,c},{b,d}; the worked example for the
// residuation map and the effect cases (pivot {a,c}).
inline config_structure sigma_example() {
    return make_cs({"a", "b", "c", "d"}, {"", "a", "b", "ab", "ac", "bd"});
}

// Two events that can each fire first but never join.
inline config_structure fork() { return make_cs({"a", "b"}, {"", "a", "b"}); }

// Stable chain a then b.
inline config_structure chain2() { return make_cs({"a", "b"}, {"", "a", "ab"}); }

// {a},{b} share the bounds {a,b,c} and {a,b,d} but no least one: bounded
// without being compatible.
inline config_structure bounded_not_compatible() {
    return make_cs({"a", "b", "c", "d"}, {"", "a", "b", "abc", "abd"});
}

// Family of the one-cause-one-conflict event structure (b<c, a#c).
inline config_structure cause_conflict_family() {
    return make_cs({"a", "b", "c"}, {"", "a", "b", "ab", "bc"});
}

}  // namespace fixtures
