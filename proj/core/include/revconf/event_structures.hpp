#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revconf/stability.hpp"
#include "revconf/structures.hpp"

namespace revconf {

// Causality and conflict over an event table, no axioms enforced. Causality
// rows hold, per event, the mask of declared causes (predecessors under ≤);
// any relation is representable, including cyclic ones. Conflict rows may be
// asymmetric here; validation reports that.
struct raw_event_structure {
    event_table table;
    std::vector<event_set> causes;    // causes[e] ⊇ declared {f : f ≤ e}
    std::vector<event_set> conflict;  // conflict[e] = declared {f : f # e}
};

struct pes_validation;

// A validated prime event structure: causality is a reflexive partial order
// (stored in full along with its cover reduction), conflict is irreflexive,
// symmetric, hereditary, and disjoint from strict causality.
class prime_event_structure {
public:
    prime_event_structure() = default;

    const event_table& table() const { return table_; }
    std::size_t size() const { return table_.size(); }
    // below(e) includes e itself; cover_below(e) holds the immediate causes.
    event_set below(std::size_t e) const { return below_[e]; }
    event_set cover_below(std::size_t e) const { return cover_below_[e]; }
    event_set conflicts(std::size_t e) const { return conflict_[e]; }
    bool leq(std::size_t d, std::size_t e) const { return contains_event(below_[e], d); }
    bool in_conflict(std::size_t d, std::size_t e) const { return contains_event(conflict_[e], d); }

    bool operator==(const prime_event_structure&) const = default;

private:
    friend pes_validation validate_pes(const raw_event_structure& raw);
    event_table table_;
    std::vector<event_set> below_;
    std::vector<event_set> cover_below_;
    std::vector<event_set> conflict_;
};

struct pes_validation {
    std::optional<prime_event_structure> pes;  // present iff violations empty
    std::vector<std::string> violations;
    bool ok() const { return pes.has_value(); }
};

// Closes causality reflexively and transitively, then checks antisymmetry
// (rejecting cycles with a witness), conflict irreflexivity and symmetry,
// disjointness from strict causality, and conflict heredity. Returns the
// certified structure or the full violation list.
pes_validation validate_pes(const raw_event_structure& raw);

// All conflict-free, down-closed event sets. Size beyond the cap raises
// resource_error (the enumeration walks all subsets).
std::vector<event_set> configurations(const prime_event_structure& e, std::size_t cap = 16);

// ⟨events, configurations⟩ over the same universe. Stable by construction.
config_structure functor_c(const prime_event_structure& e, std::size_t cap = 16);

// Winskel's event structure of a stable configuration structure: events are
// the complete primes, causality is inclusion, conflict is incompatibility.
// prime_of_event[i] is the prime configuration behind event i (indices
// follow the new table's name order).
struct prime_es_of_structure {
    prime_event_structure pes;
    std::vector<event_set> prime_of_event;
};

// Throws domain_error (with the failing axioms) on unstable input.
prime_es_of_structure functor_e(const config_structure& c,
                                std::size_t quantifier_cap = default_quantifier_cap);

struct polarized_event_structure {
    prime_event_structure pes;
    std::vector<int> sign;  // per event index, -1 or +1

    event_set negative_set() const;
    bool operator==(const polarized_event_structure&) const = default;
};

struct raw_polarized_structure {
    raw_event_structure raw;
    std::vector<int> sign;
};

struct polarized_validation {
    std::optional<polarized_event_structure> pes;
    std::vector<std::string> violations;
    bool ok() const { return pes.has_value(); }
};

// validate_pes plus the polarity invariant: the negative events must form a
// configuration of the validated structure.
polarized_validation validate_polarized(const raw_polarized_structure& raw);

// Polarized structure of a pointed structure: the base's event structure
// with a prime negative exactly when it is contained in the referential.
struct polarized_es_of_structure {
    polarized_event_structure pes;
    std::vector<event_set> prime_of_event;
};

polarized_es_of_structure functor_e_pointed(const pointed_structure& p,
                                            std::size_t quantifier_cap = default_quantifier_cap);

// Bijections preserving causality and conflict (and polarity, in the
// polarized variant). Backtracking with degree-profile pruning; universes
// beyond cap raise resource_error.
std::optional<event_bijection> pes_isomorphic(const prime_event_structure& e1,
                                              const prime_event_structure& e2,
                                              std::size_t cap = 10);
std::optional<event_bijection> polarized_isomorphic(const polarized_event_structure& e1,
                                                    const polarized_event_structure& e2,
                                                    std::size_t cap = 10);

}  // namespace revconf
