#include "revconf/switching.hpp"

#include <algorithm>
#include <map>

#include "revconf/errors.hpp"
#include "revconf/residuation.hpp"

namespace revconf {

event_set residuation_map::apply(event_set p) const {
    for (const auto& [from, to] : mapping)
        if (from == p) return to;
    throw domain_error(format_config(source.table(), p) + " is not a prime of the source");
}

residuation_map make_residuation_map(const config_structure& c, event_set x,
                                     std::size_t quantifier_cap) {
    if (!is_stable(c)) throw domain_error("source structure is not stable");
    residuation_map m;
    m.source = c;
    m.pivot = x;
    m.target = symmetric_residual(c, x);

    auto source_primes = complete_primes(c, quantifier_cap);
    auto target_primes = complete_primes(m.target, quantifier_cap);
    std::map<std::size_t, event_set> target_by_derivative;
    for (event_set q : target_primes) {
        auto [it, fresh] = target_by_derivative.emplace(derivative(m.target, q), q);
        if (!fresh)
            throw integrity_error("two primes of the residual introduce " +
                                  c.table().name(it->first));
    }
    for (event_set p : source_primes) {
        auto it = target_by_derivative.find(derivative(c, p));
        if (it == target_by_derivative.end())
            throw integrity_error("no residual prime matches the derivative of " +
                                  format_config(c.table(), p));
        m.mapping.emplace_back(p, it->second);
    }
    if (source_primes.size() != target_primes.size())
        throw integrity_error("prime counts differ between source and residual");
    return m;
}

const char* effect_case_name(effect_case t) {
    switch (t) {
        case effect_case::preserve_ort: return "PreserveOrt";
        case effect_case::flip_cause: return "FlipCause";
        case effect_case::preserve_cause: return "PreserveCause";
        case effect_case::cause_to_conflict: return "CauseToConflict";
        case effect_case::conflict_to_cause: return "ConflictToCause";
        case effect_case::preserve_conflict: return "PreserveConflict";
    }
    return "?";
}

namespace {

struct oriented_premise {
    effect_case tag;
    bool swapped;
};

// Premises of the six effect cases for one orientation (p, q).
std::vector<effect_case> premises(const config_structure& c, event_set x, event_set p,
                                  event_set q) {
    std::vector<effect_case> out;
    bool comp = compatible(c, p, q);
    bool p_below_q = proper_subset_of(p, q);
    bool p_in_x = subset_of(p, x);
    bool q_in_x = subset_of(q, x);
    if (comp && !subset_of(p, q) && !subset_of(q, p)) out.push_back(effect_case::preserve_ort);
    if (p_below_q && q_in_x) out.push_back(effect_case::flip_cause);
    if (p_below_q && !p_in_x && !q_in_x) out.push_back(effect_case::preserve_cause);
    if (p_below_q && p_in_x && !q_in_x) out.push_back(effect_case::cause_to_conflict);
    if (!comp && p_in_x) out.push_back(effect_case::conflict_to_cause);
    if (!comp && !p_in_x && !q_in_x) out.push_back(effect_case::preserve_conflict);
    return out;
}

}  // namespace

effect_result classify_effect(const config_structure& c, event_set x, event_set p, event_set q,
                              std::size_t quantifier_cap) {
    return classify_effect(make_residuation_map(c, x, quantifier_cap), p, q);
}

effect_result classify_effect(const residuation_map& m, event_set p, event_set q) {
    if (p == q) throw domain_error("effect cases are defined on distinct primes");
    const config_structure& c = m.source;
    event_set x = m.pivot;
    {
        auto is_prime = [&](event_set v) {
            return std::any_of(m.mapping.begin(), m.mapping.end(),
                               [&](const auto& pair) { return pair.first == v; });
        };
        if (!is_prime(p) || !is_prime(q))
            throw domain_error("effect cases are defined on complete primes");
    }

    auto fw = premises(c, x, p, q);
    auto bw = premises(c, x, q, p);
    // The orthogonality and symmetric-conflict premises fire under both
    // orientations; count them once.
    auto symmetric = [](effect_case t) {
        return t == effect_case::preserve_ort || t == effect_case::preserve_conflict;
    };
    std::vector<oriented_premise> all;
    for (auto t : fw) all.push_back({t, false});
    for (auto t : bw)
        if (!symmetric(t)) all.push_back({t, true});
    if (all.size() != 1)
        throw integrity_error(std::to_string(all.size()) + " premises apply to " +
                              format_config(c.table(), p) + ", " + format_config(c.table(), q) +
                              " under " + format_config(c.table(), x));

    effect_result r;
    r.tag = all.front().tag;
    r.p = all.front().swapped ? q : p;
    r.q = all.front().swapped ? p : q;
    event_set sp = m.apply(r.p);
    event_set sq = m.apply(r.q);
    switch (r.tag) {
        case effect_case::preserve_ort:
            r.conclusion_holds = orthogonal(m.target, sp, sq);
            break;
        case effect_case::flip_cause:
            r.conclusion_holds = subset_of(sq, sp);
            break;
        case effect_case::preserve_cause:
        case effect_case::conflict_to_cause:
            r.conclusion_holds = subset_of(sp, sq);
            break;
        case effect_case::cause_to_conflict:
        case effect_case::preserve_conflict:
            r.conclusion_holds = !compatible(m.target, sp, sq);
            break;
    }
    return r;
}

raw_event_structure switch_pes(const prime_event_structure& e, event_set x_set) {
    std::size_t n = e.size();
    {
        // x_set must be one of e's configurations.
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (contains_event(x_set, i) &&
                (!subset_of(e.below(i), x_set) || (e.conflicts(i) & x_set) != 0))
                ok = false;
        if (!subset_of(x_set, e.table().universe())) ok = false;
        if (!ok)
            throw domain_error(format_config(e.table(), x_set) +
                               " is not a configuration of the event structure");
    }

    raw_event_structure out;
    out.table = e.table();
    out.causes.assign(n, 0);
    out.conflict.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool a_in = contains_event(x_set, a);
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            bool b_in = contains_event(x_set, b);
            bool a_lt_b = e.leq(a, b);
            bool b_lt_a = e.leq(b, a);
            bool a_cf_b = e.in_conflict(a, b);
            // Causality: kept outside x_set, reversed inside it, and created
            // out of x_set's conflicts with the outside.
            bool lt = (a_lt_b && !a_in && !b_in) || (b_lt_a && a_in && b_in) || (a_cf_b && a_in);
            // Conflict: kept outside x_set; causality leaving x_set turns
            // into conflict. The clause is directed; close symmetrically.
            bool cf = (a_cf_b && !a_in && !b_in) || (a_lt_b && a_in && !b_in);
            if (lt) out.causes[b] |= single_event(a);
            if (cf) {
                out.conflict[b] |= single_event(a);
                out.conflict[a] |= single_event(b);
            }
        }
    }
    return out;
}

raw_polarized_structure switch_polarized(const polarized_event_structure& e, event_set x_set) {
    raw_polarized_structure out;
    out.raw = switch_pes(e.pes, x_set);
    out.sign = e.sign;
    for (std::size_t i = 0; i < out.sign.size(); ++i)
        if (contains_event(x_set, i)) out.sign[i] = -out.sign[i];
    return out;
}

namespace {

// Events of E(c) whose primes are contained in x: the set the adequacy
// theorems switch on.
event_set primes_below_as_events(const std::vector<event_set>& prime_of_event, event_set x) {
    event_set mask = 0;
    for (std::size_t i = 0; i < prime_of_event.size(); ++i)
        if (subset_of(prime_of_event[i], x)) mask |= single_event(i);
    return mask;
}

// σ transported to a table bijection: event i of the left structure (a prime
// of c) maps to the right event holding σ(prime). Absent when some image is
// not a right event.
std::optional<event_bijection> sigma_as_bijection(const residuation_map& m,
                                                  const std::vector<event_set>& left_primes,
                                                  const std::vector<event_set>& right_primes) {
    event_bijection phi(left_primes.size());
    if (left_primes.size() != right_primes.size()) return std::nullopt;
    for (std::size_t i = 0; i < left_primes.size(); ++i) {
        event_set image = m.apply(left_primes[i]);
        auto it = std::find(right_primes.begin(), right_primes.end(), image);
        if (it == right_primes.end()) return std::nullopt;
        phi[i] = static_cast<std::size_t>(it - right_primes.begin());
    }
    return phi;
}

bool bijection_is_pes_iso(const prime_event_structure& e1, const prime_event_structure& e2,
                          const event_bijection& phi) {
    if (e1.size() != e2.size()) return false;
    for (std::size_t i = 0; i < e1.size(); ++i)
        for (std::size_t j = 0; j < e1.size(); ++j) {
            if (e1.leq(i, j) != e2.leq(phi[i], phi[j])) return false;
            if (e1.in_conflict(i, j) != e2.in_conflict(phi[i], phi[j])) return false;
        }
    return true;
}

}  // namespace

check_result adequacy_check(const config_structure& c, event_set x, std::size_t quantifier_cap) {
    check_result r;
    auto m = make_residuation_map(c, x, quantifier_cap);
    auto left = functor_e(c, quantifier_cap);

    event_set switch_on = primes_below_as_events(left.prime_of_event, x);
    auto switched = switch_pes(left.pes, switch_on);
    auto validated = validate_pes(switched);
    if (!validated.ok()) {
        r.pass = false;
        r.detail = "switched side fails validation:";
        for (const auto& s : validated.violations) r.detail += " " + s + ";";
        return r;
    }

    auto right = functor_e(m.target, quantifier_cap);
    auto phi = sigma_as_bijection(m, left.prime_of_event, right.prime_of_event);
    if (!phi) {
        r.pass = false;
        r.detail = "residuation map leaves the primes of the residual";
        return r;
    }
    // The switched structure and E(c) share a table, so σ is checked as a
    // map from the switched side straight into E(x ⊙ c).
    if (!bijection_is_pes_iso(*validated.pes, right.pes, *phi)) {
        r.pass = false;
        r.detail = "residuation map is not an isomorphism between the switched event structure "
                   "and the residual's event structure";
        return r;
    }
    if (!pes_isomorphic(*validated.pes, right.pes).has_value()) {
        r.pass = false;
        r.detail = "no isomorphism found despite the residuation-map witness";
        return r;
    }
    return r;
}

check_result polarity_adequacy_check(const pointed_structure& p, event_set x,
                                     std::size_t quantifier_cap) {
    check_result r;
    auto m = make_residuation_map(p.base(), x, quantifier_cap);
    auto left = functor_e_pointed(p, quantifier_cap);

    event_set switch_on = primes_below_as_events(left.prime_of_event, x);
    auto switched = switch_polarized(left.pes, switch_on);
    auto validated = validate_polarized(switched);
    if (!validated.ok()) {
        r.pass = false;
        r.detail = "switched polarized side fails validation:";
        for (const auto& s : validated.violations) r.detail += " " + s + ";";
        return r;
    }

    auto right = functor_e_pointed(pointed_residual(p, x), quantifier_cap);
    auto phi = sigma_as_bijection(m, left.prime_of_event, right.prime_of_event);
    if (!phi) {
        r.pass = false;
        r.detail = "residuation map leaves the primes of the residual";
        return r;
    }
    if (!bijection_is_pes_iso(validated.pes->pes, right.pes.pes, *phi)) {
        r.pass = false;
        r.detail = "residuation map is not an isomorphism of the polarized structures";
        return r;
    }
    for (std::size_t i = 0; i < phi->size(); ++i) {
        if (validated.pes->sign[i] != right.pes.sign[(*phi)[i]]) {
            r.pass = false;
            r.detail = "polarity differs at " + validated.pes->pes.table().name(i) +
                       " across the residuation map";
            return r;
        }
    }
    if (!polarized_isomorphic(*validated.pes, right.pes).has_value()) {
        r.pass = false;
        r.detail = "no polarized isomorphism despite the residuation-map witness";
        return r;
    }
    return r;
}

}  // namespace revconf
