#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "revconf/event_structures.hpp"

namespace revconf {

// The derivative-preserving bijection from primes of the source to primes of
// pivot ⊙ source.
struct residuation_map {
    config_structure source;
    event_set pivot;
    config_structure target;  // pivot ⊙ source
    // (p, σ(p)) ordered canonically by p.
    std::vector<std::pair<event_set, event_set>> mapping;

    event_set apply(event_set p) const;  // domain_error when p is not mapped
};

// Matches primes by derivative via introducer lookup in the residual.
// Requires a stable source and pivot ∈ configs; a prime without a
// counterpart would contradict injectivity-plus-totality of the derivative
// and raises integrity_error.
residuation_map make_residuation_map(const config_structure& c, event_set x,
                                     std::size_t quantifier_cap = default_quantifier_cap);

enum class effect_case {
    preserve_ort,       // p ⊥ q                    ⇒ σ(p) ⊥ σ(q)
    flip_cause,         // p ⊆ q, q ⊆ x             ⇒ σ(q) ⊆ σ(p)
    preserve_cause,     // p ⊆ q, p ⊄ x, q ⊄ x      ⇒ σ(p) ⊆ σ(q)
    cause_to_conflict,  // p ⊆ q, p ⊆ x, q ⊄ x      ⇒ σ(p) incompatible σ(q)
    conflict_to_cause,  // p incompatible q, p ⊆ x  ⇒ σ(p) ⊆ σ(q)
    preserve_conflict,  // p incompatible q, p,q ⊄ x ⇒ σ(p) incompatible σ(q)
};

const char* effect_case_name(effect_case t);

struct effect_result {
    effect_case tag;
    // The orientation under which the unique premise fired; may swap the
    // arguments given to classify_effect.
    event_set p;
    event_set q;
    bool conclusion_holds;
};

// Determines the single applicable premise for the distinct primes p, q of c
// (orienting the pair as needed) and evaluates its conclusion in x ⊙ c.
// Zero or multiple applicable premises raise integrity_error.
effect_result classify_effect(const config_structure& c, event_set x, event_set p, event_set q,
                              std::size_t quantifier_cap = default_quantifier_cap);

// Same, over a precomputed map (cheaper inside sweeps). p and q must be
// mapped primes.
effect_result classify_effect(const residuation_map& m, event_set p, event_set q);

// The switch of e along a finite configuration x_set of e (domain_error
// otherwise): causality is reversed inside x_set, conflict with the inside
// becomes causality out of the inside, causality leaving the inside becomes
// conflict, and relations not touching x_set are kept. The directed
// conflict clause is symmetrically closed; the result is raw and must go
// through validate_pes.
raw_event_structure switch_pes(const prime_event_structure& e, event_set x_set);

// switch_pes plus sign flipping on x_set. Validation (including the
// negative-set invariant) is deferred to validate_polarized.
raw_polarized_structure switch_polarized(const polarized_event_structure& e, event_set x_set);

struct check_result {
    bool pass = true;
    std::string detail;  // what failed, with the structures rendered
};

// Builds E(x⊙c) and ⌊x⌋ ⊙ E(c), validates the switched side, and verifies
// that σ_x is an isomorphism between them (stronger than existence).
check_result adequacy_check(const config_structure& c, event_set x,
                            std::size_t quantifier_cap = default_quantifier_cap);

// Polarized variant over a pointed structure: compares ⌊x⌋ ⊙ E(p) with
// E(x ⊙ p), polarity included, witness σ_x again.
check_result polarity_adequacy_check(const pointed_structure& p, event_set x,
                                     std::size_t quantifier_cap = default_quantifier_cap);

}  // namespace revconf
