#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revconf/structures.hpp"

namespace revconf {

enum class stability_axiom { rooted, connected, bounded_union_closed, intersection_closed, coherent };

const char* axiom_name(stability_axiom a);

struct axiom_verdict {
    bool pass = true;
    // First counterexample in canonical order. Which slots are meaningful
    // depends on the axiom: connected fills x only; bounded union fills x, y
    // and the bound z; intersection fills x, y; coherent fills x, y, z.
    std::optional<event_set> x, y, z;
    std::optional<event_set> missing;  // the configuration the axiom demands
};

struct stability_report {
    axiom_verdict rooted;
    axiom_verdict connected;
    axiom_verdict bounded_union_closed;
    axiom_verdict intersection_closed;
    axiom_verdict coherent;
    bool stable() const {
        return rooted.pass && connected.pass && bounded_union_closed.pass &&
               intersection_closed.pass && coherent.pass;
    }
};

/* The coherence axiom quantifies over pairwise incomparable triples. For
 * triples with a comparable or equal pair the conclusion already follows
 * from closure under bounded unions, so the class of stable structures is
 * unchanged, and per-axiom verdicts stay disjoint on the canonical
 * counterexample structures (a family missing only a bounded binary union
 * fails exactly the bounded-union axiom, not coherence too). */
stability_report make_stability_report(const config_structure& c);

inline bool is_stable(const config_structure& c) { return make_stability_report(c).stable(); }

// Compact and complete prime elements per the literal subset quantifiers.
// Enumeration is exponential in the family size; families larger than
// quantifier_cap raise resource_error. The empty configuration satisfies the
// prime quantifier vacuously but is excluded: primes are characterized by a
// unique immediate predecessor, which the root lacks, and the event
// structure construction must not mint an event for it.
inline constexpr std::size_t default_quantifier_cap = 24;

std::vector<event_set> compact_elements(const config_structure& c,
                                        std::size_t quantifier_cap = default_quantifier_cap);
std::vector<event_set> complete_primes(const config_structure& c,
                                       std::size_t quantifier_cap = default_quantifier_cap);

// Complete primes contained in x.
std::vector<event_set> primes_below(const config_structure& c, event_set x,
                                    std::size_t quantifier_cap = default_quantifier_cap);

struct predicate_verdict {
    bool pass = true;
    std::optional<event_set> witness;
    std::string detail;
};

struct domain_report {
    std::vector<event_set> compact;
    std::vector<event_set> primes;
    predicate_verdict finitary;        // down-set of each compact element finite
    predicate_verdict coherent_order;  // every pairwise-consistent subset has a lub
    predicate_verdict prime_algebraic; // every x is the lub of its primes
    bool domain() const { return finitary.pass && coherent_order.pass && prime_algebraic.pass; }
};

domain_report make_domain_report(const config_structure& c,
                                 std::size_t quantifier_cap = default_quantifier_cap);

// The unique maximal configuration strictly below p, when exactly one
// exists. Requires p ≠ ∅ (domain_error on the root).
std::optional<event_set> pred(const config_structure& c, event_set p);

// The single event p adds over its unique immediate predecessor. Requires a
// stable structure and a complete prime; a missing or non-singleton
// difference signals a broken precondition (domain_error).
std::size_t derivative(const config_structure& c, event_set p);

// The unique prime introducing event a (δ(p) = a), absent when a occurs in
// no configuration. Two primes with one derivative would contradict
// injectivity of δ on stable structures: integrity_error.
std::optional<event_set> introducer(const config_structure& c, std::size_t a,
                                    std::size_t quantifier_cap = default_quantifier_cap);

}  // namespace revconf
