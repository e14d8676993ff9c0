#include "revconf/stability.hpp"

#include <algorithm>
#include <map>

#include "revconf/errors.hpp"

namespace revconf {

const char* axiom_name(stability_axiom a) {
    switch (a) {
        case stability_axiom::rooted: return "rooted";
        case stability_axiom::connected: return "connected";
        case stability_axiom::bounded_union_closed: return "bounded-union-closed";
        case stability_axiom::intersection_closed: return "intersection-closed";
        case stability_axiom::coherent: return "coherent";
    }
    return "?";
}

stability_report make_stability_report(const config_structure& c) {
    stability_report r;
    const auto& cfg = c.configs();
    const std::size_t n = cfg.size();

    if (!c.rooted()) {
        r.rooted.pass = false;
        r.rooted.missing = 0;
    }

    for (event_set x : cfg) {
        if (x == 0) continue;
        bool connected = false;
        for (std::size_t i = 0; i < c.table().size() && !connected; ++i)
            if (contains_event(x, i)) connected = c.contains(x & ~single_event(i));
        if (!connected) {
            r.connected.pass = false;
            r.connected.x = x;
            break;
        }
    }

    for (std::size_t i = 0; i < n && r.bounded_union_closed.pass; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            event_set u = cfg[i] | cfg[j];
            if (c.contains(u)) continue;
            auto bound = std::find_if(cfg.begin(), cfg.end(),
                                      [&](event_set z) { return subset_of(u, z); });
            if (bound != cfg.end()) {
                r.bounded_union_closed = {false, cfg[i], cfg[j], *bound, u};
                break;
            }
        }
    }

    for (std::size_t i = 0; i < n && r.intersection_closed.pass; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            event_set m = cfg[i] & cfg[j];
            if (!c.contains(m)) {
                r.intersection_closed = {false, cfg[i], cfg[j], std::nullopt, m};
                break;
            }
        }
    }

    // Quantified over pairwise incomparable triples: for a triple with a
    // comparable pair the conclusion is already an instance of bounded-union
    // closure, so nothing is lost (see the header note).
    auto has_bound = [&](event_set u) {
        return std::any_of(cfg.begin(), cfg.end(), [&](event_set z) { return subset_of(u, z); });
    };
    for (std::size_t i = 0; i < n && r.coherent.pass; ++i) {
        for (std::size_t j = i + 1; j < n && r.coherent.pass; ++j) {
            if (subset_of(cfg[i], cfg[j]) || subset_of(cfg[j], cfg[i])) continue;
            if (!has_bound(cfg[i] | cfg[j])) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (subset_of(cfg[i], cfg[k]) || subset_of(cfg[k], cfg[i])) continue;
                if (subset_of(cfg[j], cfg[k]) || subset_of(cfg[k], cfg[j])) continue;
                if (!has_bound(cfg[j] | cfg[k]) || !has_bound(cfg[i] | cfg[k])) continue;
                event_set u = cfg[i] | cfg[j] | cfg[k];
                if (!c.contains(u)) {
                    r.coherent = {false, cfg[i], cfg[j], cfg[k], u};
                    break;
                }
            }
        }
    }
    return r;
}

namespace {

// Shared machinery for the subset quantifiers: least configuration
// containing a union, memoized, plus the pairwise-consistency matrix.
struct quantifier_context {
    const config_structure& c;
    std::map<event_set, std::optional<event_set>> lub_memo;

    explicit quantifier_context(const config_structure& c_, std::size_t cap) : c(c_) {
        // 32 is a hard ceiling regardless of the requested cap: subset walks
        // index configurations through 32-bit masks.
        if (c.size() > cap || c.size() > 32)
            throw resource_error("subset quantifier over " + std::to_string(c.size()) +
                                 " configurations exceeds the cap of " +
                                 std::to_string(std::min<std::size_t>(cap, 32)));
    }

    // Least configuration containing u, if any. Canonical order puts a least
    // bound first among bounds (it has strictly minimal cardinality).
    std::optional<event_set> lub_of_union(event_set u) {
        auto it = lub_memo.find(u);
        if (it != lub_memo.end()) return it->second;
        std::optional<event_set> least;
        for (event_set z : c.configs()) {
            if (!subset_of(u, z)) continue;
            if (!least) {
                least = z;
            } else if (!subset_of(*least, z)) {
                least = std::nullopt;
                break;
            }
        }
        lub_memo.emplace(u, least);
        return least;
    }

    std::vector<std::uint32_t> pair_consistent_masks() {
        const auto& cfg = c.configs();
        std::vector<std::uint32_t> pc(cfg.size(), 0);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            for (std::size_t j = i; j < cfg.size(); ++j) {
                if (lub_of_union(cfg[i] | cfg[j])) {
                    pc[i] |= std::uint32_t{1} << j;
                    pc[j] |= std::uint32_t{1} << i;
                }
            }
        }
        return pc;
    }
};

// Depth-first walk over the pairwise-consistent subsets Y of the candidate
// configurations (indices in `allowed`), looking for a violation of
// primality of p: a Y none of whose members contains p although its least
// upper bound does. Candidates are pre-restricted to sets not containing p.
bool prime_violation(quantifier_context& ctx, const std::vector<std::size_t>& candidates,
                     const std::vector<std::uint32_t>& pc, event_set p, std::size_t from,
                     std::uint32_t allowed, event_set union_mask) {
    const auto& cfg = ctx.c.configs();
    for (std::size_t t = from; t < candidates.size(); ++t) {
        std::size_t i = candidates[t];
        if (!((allowed >> i) & 1u)) continue;
        event_set u = union_mask | cfg[i];
        auto l = ctx.lub_of_union(u);
        if (l && subset_of(p, *l)) return true;
        if (prime_violation(ctx, candidates, pc, p, t + 1, allowed & pc[i], u)) return true;
    }
    return false;
}

}  // namespace

std::vector<event_set> complete_primes(const config_structure& c, std::size_t quantifier_cap) {
    quantifier_context ctx(c, quantifier_cap);
    auto pc = ctx.pair_consistent_masks();
    const auto& cfg = c.configs();
    std::vector<event_set> primes;
    for (event_set p : cfg) {
        // The root is vacuously prime under the quantifier but carries no
        // event; it is excluded by convention (see header).
        if (p == 0) continue;
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < cfg.size(); ++i)
            if (!subset_of(p, cfg[i])) candidates.push_back(i);
        if (!prime_violation(ctx, candidates, pc, p, 0, ~std::uint32_t{0}, 0))
            primes.push_back(p);
    }
    return primes;
}

namespace {

// Literal walk over all nonempty subsets Y, testing the compactness
// quantifier: Y directed (its least upper bound is a member) with
// x below that bound must contain a member above x.
bool compact_violation(quantifier_context& ctx, event_set x, std::size_t from,
                       std::vector<event_set>& chosen, event_set union_mask) {
    const auto& cfg = ctx.c.configs();
    for (std::size_t i = from; i < cfg.size(); ++i) {
        event_set u = union_mask | cfg[i];
        chosen.push_back(cfg[i]);
        auto l = ctx.lub_of_union(u);
        bool directed = l && std::find(chosen.begin(), chosen.end(), *l) != chosen.end();
        if (directed && subset_of(x, *l)) {
            bool witness = std::any_of(chosen.begin(), chosen.end(),
                                       [&](event_set y) { return subset_of(x, y); });
            if (!witness) {
                chosen.pop_back();
                return true;
            }
        }
        if (compact_violation(ctx, x, i + 1, chosen, u)) {
            chosen.pop_back();
            return true;
        }
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::vector<event_set> compact_elements(const config_structure& c, std::size_t quantifier_cap) {
    quantifier_context ctx(c, quantifier_cap);
    std::vector<event_set> out;
    std::vector<event_set> chosen;
    for (event_set x : c.configs()) {
        if (!compact_violation(ctx, x, 0, chosen, 0)) out.push_back(x);
    }
    return out;
}

std::vector<event_set> primes_below(const config_structure& c, event_set x,
                                    std::size_t quantifier_cap) {
    if (!c.contains(x))
        throw domain_error(format_config(c.table(), x) + " is not a configuration");
    std::vector<event_set> out;
    for (event_set p : complete_primes(c, quantifier_cap))
        if (subset_of(p, x)) out.push_back(p);
    return out;
}

domain_report make_domain_report(const config_structure& c, std::size_t quantifier_cap) {
    domain_report r;
    r.compact = compact_elements(c, quantifier_cap);
    r.primes = complete_primes(c, quantifier_cap);

    // Finitary: the down-set of each compact element is finite. Trivially
    // true on these finite families; evaluated anyway.
    for (event_set x : r.compact) {
        std::size_t below = 0;
        for (event_set y : c.configs())
            if (subset_of(y, x)) ++below;
        if (below > c.size()) {
            r.finitary = {false, x, "down-set larger than the family"};
            break;
        }
    }

    {
        quantifier_context ctx(c, quantifier_cap);
        auto pc = ctx.pair_consistent_masks();
        const auto& cfg = c.configs();
        // First pairwise-consistent subset without a least upper bound, in
        // depth-first order over canonical indices.
        struct walker {
            quantifier_context& ctx;
            const std::vector<std::uint32_t>& pc;
            std::vector<std::size_t> chosen;
            std::vector<std::size_t> bad;

            bool walk(std::size_t from, std::uint32_t allowed, event_set u) {
                const auto& cfg = ctx.c.configs();
                for (std::size_t i = from; i < cfg.size(); ++i) {
                    if (!((allowed >> i) & 1u)) continue;
                    chosen.push_back(i);
                    event_set u2 = u | cfg[i];
                    if (!ctx.lub_of_union(u2)) {
                        bad = chosen;
                        return true;
                    }
                    if (walk(i + 1, allowed & pc[i], u2)) return true;
                    chosen.pop_back();
                }
                return false;
            }
        } w{ctx, pc, {}, {}};
        if (w.walk(0, ~std::uint32_t{0}, 0)) {
            std::string detail = "no least upper bound for {";
            for (std::size_t t = 0; t < w.bad.size(); ++t) {
                if (t) detail += ", ";
                detail += format_config(c.table(), cfg[w.bad[t]]);
            }
            detail += "}";
            r.coherent_order = {false, cfg[w.bad.back()], detail};
        }
    }

    {
        quantifier_context ctx(c, quantifier_cap);
        for (event_set x : c.configs()) {
            event_set u = 0;
            for (event_set p : r.primes)
                if (subset_of(p, x)) u |= p;
            auto l = ctx.lub_of_union(u);
            if (!l || *l != x) {
                r.prime_algebraic = {false, x,
                                     "not the least upper bound of its primes (their union is " +
                                         format_config(c.table(), u) + ")"};
                break;
            }
        }
    }
    return r;
}

std::optional<event_set> pred(const config_structure& c, event_set p) {
    if (!c.contains(p))
        throw domain_error(format_config(c.table(), p) + " is not a configuration");
    if (p == 0) throw domain_error("the root has no predecessor");
    std::vector<event_set> lower;
    for (event_set y : c.configs())
        if (proper_subset_of(y, p)) lower.push_back(y);
    std::optional<event_set> unique_max;
    for (event_set y : lower) {
        bool maximal = std::none_of(lower.begin(), lower.end(),
                                    [&](event_set z) { return proper_subset_of(y, z); });
        if (!maximal) continue;
        if (unique_max) return std::nullopt;
        unique_max = y;
    }
    return unique_max;
}

std::size_t derivative(const config_structure& c, event_set p) {
    auto pr = pred(c, p);
    if (!pr) throw domain_error(format_config(c.table(), p) + " has no unique predecessor");
    event_set diff = set_difference(p, *pr);
    if (set_size(diff) != 1)
        throw domain_error(format_config(c.table(), p) +
                           " adds more than one event over its predecessor");
    return static_cast<std::size_t>(std::countr_zero(diff));
}

std::optional<event_set> introducer(const config_structure& c, std::size_t a,
                                    std::size_t quantifier_cap) {
    std::optional<event_set> found;
    for (event_set p : complete_primes(c, quantifier_cap)) {
        if (derivative(c, p) != a) continue;
        if (found)
            throw integrity_error("two primes introduce " + c.table().name(a) + ": " +
                                  format_config(c.table(), *found) + " and " +
                                  format_config(c.table(), p));
        found = p;
    }
    return found;
}

}  // namespace revconf
