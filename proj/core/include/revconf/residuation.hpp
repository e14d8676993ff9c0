#pragma once

#include <cstddef>
#include <vector>

#include "revconf/structures.hpp"

namespace revconf {

// Residual of c after x: configurations still reachable once x has occurred.
// Universe unchanged. Throws domain_error when x is not a configuration.
config_structure classical_residual(const config_structure& c, event_set x);

// Symmetric residual: every configuration replaced by its symmetric
// difference with x. A bijection on the family, so the count is preserved.
config_structure symmetric_residual(const config_structure& c, event_set x);

// Pointed residual: base residuated symmetrically, referential replaced by
// y △ referential.
pointed_structure pointed_residual(const pointed_structure& p, event_set y);

// All symmetric residuals of the origin, deduplicated by exact equality of
// configuration families. Each member keeps the set of configurations that
// reach it; the member tagged by the empty configuration is the origin.
struct orbit_member {
    config_structure structure;
    std::vector<event_set> tags;  // canonical order
};

struct orbit_result {
    config_structure origin;
    std::vector<orbit_member> members;  // ordered by first (canonical) tag
};

orbit_result orbit(const config_structure& c);

// Membership of c2 in orbit(c1). Requires equal universes.
bool same_orbit(const config_structure& c1, const config_structure& c2);

// {x·c | x configuration of c}, deduplicated by equality.
std::vector<config_structure> reachable_residuals(const config_structure& c);

enum class lts_mode { classical, reversible_pointed };

// One state per configuration w of the initial structure. The tag w records
// how the state was reached; distinct tags stay distinct states even when
// the residual structures coincide (classical residuation is not free).
struct lts_state {
    event_set tag;
    config_structure structure;    // w·c0 in classical mode, base of pointed otherwise
    event_set referential = 0;     // reversible mode only: equals tag
};

struct lts_transition {
    std::size_t source;
    event_set label;
    std::size_t target;
};

struct transition_system {
    lts_mode mode = lts_mode::classical;
    std::vector<lts_state> states;       // canonical tag order
    std::size_t initial = 0;             // index of the ∅ tag
    std::vector<lts_transition> transitions;  // sorted by (source, label)
};

// Builds the full transition system. Classical mode: w --x--> w∪x for every
// configuration x of w·c0. Reversible mode: the input must be initial
// (referential ∅); states are pointed structures (w⊙c0)[w†] and
// w --x--> w△x for x a configuration of w⊙c0. Raises resource_error beyond
// state_cap states.
transition_system build_lts(const config_structure& c0, lts_mode mode,
                            std::size_t state_cap = 10000);
transition_system build_lts(const pointed_structure& p0, lts_mode mode,
                            std::size_t state_cap = 10000);

enum class transition_relation { concurrent, conflicting };

// Two co-initial transitions are concurrent when their labels are compatible
// in the source state's structure. Throws domain_error if the transitions
// are not co-initial.
transition_relation classify_transitions(const transition_system& t, const lts_transition& t1,
                                         const lts_transition& t2);

}  // namespace revconf
