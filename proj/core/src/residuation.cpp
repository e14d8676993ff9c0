#include "revconf/residuation.hpp"

#include <algorithm>
#include <map>

#include "revconf/errors.hpp"

namespace revconf {

static void require_member(const config_structure& c, event_set x) {
    if (!c.contains(x))
        throw domain_error(format_config(c.table(), x) + " is not a configuration");
}

config_structure classical_residual(const config_structure& c, event_set x) {
    require_member(c, x);
    std::vector<event_set> out;
    for (event_set y : c.configs())
        if (subset_of(x, y)) out.push_back(set_difference(y, x));
    return {c.table(), std::move(out)};
}

config_structure symmetric_residual(const config_structure& c, event_set x) {
    require_member(c, x);
    std::vector<event_set> out;
    out.reserve(c.size());
    for (event_set y : c.configs()) out.push_back(sym_difference(y, x));
    return {c.table(), std::move(out)};
}

pointed_structure pointed_residual(const pointed_structure& p, event_set y) {
    return {symmetric_residual(p.base(), y), sym_difference(y, p.referential())};
}

orbit_result orbit(const config_structure& c) {
    orbit_result r;
    r.origin = c;
    for (event_set x : c.configs()) {
        config_structure member = symmetric_residual(c, x);
        auto it = std::find_if(r.members.begin(), r.members.end(),
                               [&](const orbit_member& m) { return m.structure == member; });
        if (it == r.members.end())
            r.members.push_back({std::move(member), {x}});
        else
            it->tags.push_back(x);
    }
    // Tags arrive in canonical order, and members are ordered by first tag;
    // the ∅ tag is first, so members.front() is the origin.
    return r;
}

bool same_orbit(const config_structure& c1, const config_structure& c2) {
    if (c1.table() != c2.table()) throw domain_error("universes differ");
    for (event_set x : c1.configs())
        if (symmetric_residual(c1, x) == c2) return true;
    return false;
}

std::vector<config_structure> reachable_residuals(const config_structure& c) {
    std::vector<config_structure> out;
    for (event_set x : c.configs()) {
        config_structure r = classical_residual(c, x);
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
    return out;
}

static transition_system build_lts_impl(const config_structure& c0, lts_mode mode,
                                         std::size_t state_cap) {
    if (c0.size() > state_cap)
        throw resource_error("transition system would have " + std::to_string(c0.size()) +
                             " states, beyond the cap of " + std::to_string(state_cap));
    transition_system t;
    t.mode = mode;
    // One state per configuration of the origin, in canonical order. In
    // classical mode distinct tags can carry equal structures; they stay
    // separate states because the tag records the path taken.
    for (event_set w : c0.configs()) {
        lts_state s;
        s.tag = w;
        if (mode == lts_mode::classical) {
            s.structure = classical_residual(c0, w);
        } else {
            s.structure = symmetric_residual(c0, w);
            s.referential = w;
        }
        t.states.push_back(std::move(s));
    }
    t.initial = c0.index_of(0);
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        event_set w = t.states[i].tag;
        for (event_set x : t.states[i].structure.configs()) {
            event_set target_tag = mode == lts_mode::classical ? (w | x) : (w ^ x);
            t.transitions.push_back({i, x, c0.index_of(target_tag)});
        }
    }
    return t;
}

transition_system build_lts(const config_structure& c0, lts_mode mode, std::size_t state_cap) {
    return build_lts_impl(c0, mode, state_cap);
}

transition_system build_lts(const pointed_structure& p0, lts_mode mode, std::size_t state_cap) {
    if (mode == lts_mode::reversible_pointed && !p0.initial())
        throw domain_error("reversible transition systems start from an initial structure "
                           "(empty referential)");
    return build_lts_impl(p0.base(), mode, state_cap);
}

transition_relation classify_transitions(const transition_system& t, const lts_transition& t1,
                                         const lts_transition& t2) {
    if (t1.source != t2.source) throw domain_error("transitions are not co-initial");
    const config_structure& s = t.states[t1.source].structure;
    return compatible(s, t1.label, t2.label) ? transition_relation::concurrent
                                             : transition_relation::conflicting;
}

}  // namespace revconf
