#include "revconf/event_structures.hpp"

#include <algorithm>

#include "bijection_search.hpp"
#include "revconf/errors.hpp"

namespace revconf {

namespace {

// Reflexive-transitive closure of the declared causes, as below-masks.
std::vector<event_set> close_causality(const raw_event_structure& raw) {
    std::size_t n = raw.table.size();
    std::vector<event_set> below(n);
    for (std::size_t e = 0; e < n; ++e) below[e] = raw.causes[e] | single_event(e);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < n; ++e) {
            event_set acc = below[e];
            for (std::size_t d = 0; d < n; ++d)
                if (contains_event(below[e], d)) acc |= below[d];
            if (acc != below[e]) {
                below[e] = acc;
                changed = true;
            }
        }
    }
    return below;
}

}  // namespace

pes_validation validate_pes(const raw_event_structure& raw) {
    pes_validation v;
    std::size_t n = raw.table.size();
    if (raw.causes.size() != n || raw.conflict.size() != n) {
        v.violations.push_back("relation rows do not match the universe size");
        return v;
    }
    const event_table& t = raw.table;
    auto below = close_causality(raw);

    bool order_ok = true;
    for (std::size_t e = 0; e < n && order_ok; ++e) {
        for (std::size_t d = e + 1; d < n; ++d) {
            if (contains_event(below[e], d) && contains_event(below[d], e)) {
                v.violations.push_back("causality cycle through " + t.name(e) + " and " +
                                       t.name(d));
                order_ok = false;
                break;
            }
        }
    }

    for (std::size_t e = 0; e < n; ++e) {
        if (contains_event(raw.conflict[e], e))
            v.violations.push_back("conflict is not irreflexive: " + t.name(e) + " # " +
                                   t.name(e));
        for (std::size_t d = 0; d < n; ++d) {
            if (contains_event(raw.conflict[e], d) && !contains_event(raw.conflict[d], e))
                v.violations.push_back("conflict is not symmetric: " + t.name(d) + " # " +
                                       t.name(e) + " lacks its mirror");
        }
    }

    if (order_ok) {
        std::vector<event_set> above(n, 0);
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t d = 0; d < n; ++d)
                if (contains_event(below[e], d)) above[d] |= single_event(e);

        for (std::size_t e = 0; e < n; ++e) {
            for (std::size_t d = 0; d < n; ++d) {
                if (!contains_event(raw.conflict[e], d)) continue;
                // d # e here. Strict causality between them is inconsistent,
                // and conflict must propagate up from e.
                if (d != e && contains_event(below[e], d))
                    v.violations.push_back("conflict meets causality: " + t.name(d) + " # " +
                                           t.name(e) + " with " + t.name(d) + " < " + t.name(e));
                for (std::size_t f = 0; f < n; ++f) {
                    if (f == e || f == d) continue;
                    if (contains_event(above[e], f) && !contains_event(raw.conflict[f], d))
                        v.violations.push_back("conflict heredity fails: " + t.name(d) + " # " +
                                               t.name(e) + " < " + t.name(f) + " but not " +
                                               t.name(d) + " # " + t.name(f));
                }
            }
        }
    }

    if (!v.violations.empty()) return v;

    prime_event_structure pes;
    pes.table_ = raw.table;
    pes.below_ = below;
    pes.conflict_ = raw.conflict;
    pes.cover_below_.assign(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
        event_set strict = below[e] & ~single_event(e);
        for (std::size_t d = 0; d < n; ++d) {
            if (!contains_event(strict, d)) continue;
            // d is immediate unless some intermediate m sits strictly between.
            event_set between = strict & ~single_event(d) & ~below[d];
            bool immediate = true;
            for (std::size_t m = 0; m < n && immediate; ++m)
                if (contains_event(between, m) && contains_event(below[m], d)) immediate = false;
            if (immediate) pes.cover_below_[e] |= single_event(d);
        }
    }
    v.pes = std::move(pes);
    return v;
}

std::vector<event_set> configurations(const prime_event_structure& e, std::size_t cap) {
    std::size_t n = e.size();
    if (n > cap)
        throw resource_error("configuration enumeration over " + std::to_string(n) +
                             " events exceeds the cap of " + std::to_string(cap));
    std::vector<event_set> out;
    for (event_set x = 0;; ++x) {
        bool admissible = true;
        for (std::size_t i = 0; i < n && admissible; ++i) {
            if (!contains_event(x, i)) continue;
            if (!subset_of(e.below(i), x) || (e.conflicts(i) & x) != 0) admissible = false;
        }
        if (admissible) out.push_back(x);
        if (x == e.table().universe()) break;
    }
    return out;
}

config_structure functor_c(const prime_event_structure& e, std::size_t cap) {
    return {e.table(), configurations(e, cap)};
}

prime_es_of_structure functor_e(const config_structure& c, std::size_t quantifier_cap) {
    auto report = make_stability_report(c);
    if (!report.stable()) {
        std::string what = "structure is not stable (fails";
        if (!report.rooted.pass) what += " rooted";
        if (!report.connected.pass) what += " connected";
        if (!report.bounded_union_closed.pass) what += " bounded-union-closed";
        if (!report.intersection_closed.pass) what += " intersection-closed";
        if (!report.coherent.pass) what += " coherent";
        throw domain_error(what + ")");
    }

    auto primes = complete_primes(c, quantifier_cap);
    std::vector<std::string> names;
    names.reserve(primes.size());
    for (event_set p : primes) names.push_back(config_token(c.table(), p));
    {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw domain_error("prime names collide; event names containing '.' and braces "
                               "can shadow derived prime names");
    }

    prime_es_of_structure out;
    event_table table(names);
    std::size_t n = primes.size();
    out.prime_of_event.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.prime_of_event[table.index_checked(names[i])] = primes[i];

    raw_event_structure raw;
    raw.table = table;
    raw.causes.assign(n, 0);
    raw.conflict.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (subset_of(out.prime_of_event[i], out.prime_of_event[j]))
                raw.causes[j] |= single_event(i);
            else if (!subset_of(out.prime_of_event[j], out.prime_of_event[i]) &&
                     !compatible(c, out.prime_of_event[i], out.prime_of_event[j]))
                raw.conflict[j] |= single_event(i);
        }
    }
    auto v = validate_pes(raw);
    if (!v.ok()) {
        std::string what = "event structure of a stable structure failed validation:";
        for (const auto& s : v.violations) what += " " + s + ";";
        throw integrity_error(what);
    }
    out.pes = std::move(*v.pes);
    return out;
}

event_set polarized_event_structure::negative_set() const {
    event_set neg = 0;
    for (std::size_t i = 0; i < sign.size(); ++i)
        if (sign[i] < 0) neg |= single_event(i);
    return neg;
}

polarized_validation validate_polarized(const raw_polarized_structure& raw) {
    polarized_validation v;
    auto base = validate_pes(raw.raw);
    v.violations = std::move(base.violations);
    if (raw.sign.size() != raw.raw.table.size()) {
        v.violations.push_back("polarity map does not cover the universe");
        return v;
    }
    for (std::size_t i = 0; i < raw.sign.size(); ++i)
        if (raw.sign[i] != 1 && raw.sign[i] != -1)
            v.violations.push_back("polarity of " + raw.raw.table.name(i) + " is not -1 or +1");
    if (!v.violations.empty() || !base.ok()) return v;

    polarized_event_structure pes{std::move(*base.pes), raw.sign};
    event_set neg = pes.negative_set();
    for (std::size_t i = 0; i < pes.pes.size(); ++i) {
        if (!contains_event(neg, i)) continue;
        if (!subset_of(pes.pes.below(i), neg))
            v.violations.push_back("negative events are not downward closed at " +
                                   pes.pes.table().name(i));
        if ((pes.pes.conflicts(i) & neg) != 0)
            v.violations.push_back("negative events are not conflict-free at " +
                                   pes.pes.table().name(i));
    }
    if (!v.violations.empty()) return v;
    v.pes = std::move(pes);
    return v;
}

polarized_es_of_structure functor_e_pointed(const pointed_structure& p,
                                            std::size_t quantifier_cap) {
    auto base = functor_e(p.base(), quantifier_cap);
    polarized_es_of_structure out;
    out.prime_of_event = base.prime_of_event;
    out.pes.pes = std::move(base.pes);
    out.pes.sign.resize(out.prime_of_event.size());
    for (std::size_t i = 0; i < out.prime_of_event.size(); ++i)
        out.pes.sign[i] = subset_of(out.prime_of_event[i], p.referential()) ? -1 : +1;
    return out;
}

namespace {

struct pes_profile {
    int strict_below, strict_above, cover_below, cover_above, conflict;
    auto operator<=>(const pes_profile&) const = default;
};

pes_profile profile_of(const prime_event_structure& e, std::size_t i) {
    std::size_t n = e.size();
    pes_profile p{0, 0, 0, 0, set_size(e.conflicts(i))};
    p.strict_below = set_size(e.below(i)) - 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (e.leq(i, j)) p.strict_above++;
        if (contains_event(e.cover_below(j), i)) p.cover_above++;
    }
    p.cover_below = set_size(e.cover_below(i));
    return p;
}

std::optional<event_bijection> iso_search(const prime_event_structure& e1,
                                          const prime_event_structure& e2, const std::vector<int>* sign1,
                                          const std::vector<int>* sign2, std::size_t cap) {
    std::size_t n = e1.size();
    if (n != e2.size()) return std::nullopt;
    if (n > cap)
        throw resource_error("isomorphism search over " + std::to_string(n) +
                             " events exceeds the cap of " + std::to_string(cap));
    detail::bijection_search s;
    s.n = n;
    s.candidates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto prof = profile_of(e1, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (prof != profile_of(e2, j)) continue;
            if (sign1 && (*sign1)[i] != (*sign2)[j]) continue;
            s.candidates[i].push_back(j);
        }
        if (s.candidates[i].empty()) return std::nullopt;
    }
    s.leaf = [&](const event_bijection& phi) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (e1.leq(i, j) != e2.leq(phi[i], phi[j])) return false;
                if (e1.in_conflict(i, j) != e2.in_conflict(phi[i], phi[j])) return false;
            }
        return true;
    };
    return s.run();
}

}  // namespace

std::optional<event_bijection> pes_isomorphic(const prime_event_structure& e1,
                                              const prime_event_structure& e2, std::size_t cap) {
    return iso_search(e1, e2, nullptr, nullptr, cap);
}

std::optional<event_bijection> polarized_isomorphic(const polarized_event_structure& e1,
                                                    const polarized_event_structure& e2,
                                                    std::size_t cap) {
    return iso_search(e1.pes, e2.pes, &e1.sign, &e2.sign, cap);
}

}  // namespace revconf
