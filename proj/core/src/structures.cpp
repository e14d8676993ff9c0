#include "revconf/structures.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>

#include "bijection_search.hpp"
#include "revconf/errors.hpp"

namespace revconf {

config_structure::config_structure(event_table table, std::vector<event_set> configs)
    : table_(std::move(table)), configs_(std::move(configs)) {
    for (event_set x : configs_) {
        if (!subset_of(x, table_.universe()))
            throw domain_error("configuration escapes the universe");
    }
    std::sort(configs_.begin(), configs_.end(), config_canonical_less{});
    configs_.erase(std::unique(configs_.begin(), configs_.end()), configs_.end());
}

bool config_structure::contains(event_set x) const {
    return std::binary_search(configs_.begin(), configs_.end(), x, config_canonical_less{});
}

std::size_t config_structure::index_of(event_set x) const {
    auto it = std::lower_bound(configs_.begin(), configs_.end(), x, config_canonical_less{});
    if (it == configs_.end() || *it != x)
        throw domain_error(format_config(table_, x) + " is not a configuration");
    return static_cast<std::size_t>(it - configs_.begin());
}

pointed_structure::pointed_structure(config_structure base, event_set referential)
    : base_(std::move(base)), referential_(referential) {
    if (!base_.contains(referential_))
        throw domain_error("referential " + format_config(base_.table(), referential_) +
                           " is not a configuration");
}

validation_report validate(const config_structure& c) {
    validation_report r;
    if (!c.rooted()) r.issues.push_back("not rooted: the empty configuration is missing");
    return r;
}

validation_report validate(const pointed_structure& p) {
    // The referential-membership invariant is enforced at construction; only
    // the base can be invalid here.
    return validate(p.base());
}

static void require_member(const config_structure& c, event_set x) {
    if (!c.contains(x))
        throw domain_error(format_config(c.table(), x) + " is not a configuration");
}

std::vector<event_set> down_set(const config_structure& c, const std::vector<event_set>& y_set) {
    for (event_set y : y_set) require_member(c, y);
    std::vector<event_set> out;
    for (event_set x : c.configs()) {
        for (event_set y : y_set) {
            if (subset_of(x, y)) {
                out.push_back(x);
                break;
            }
        }
    }
    return out;
}

std::vector<event_set> up_set(const config_structure& c, const std::vector<event_set>& y_set) {
    for (event_set y : y_set) require_member(c, y);
    std::vector<event_set> out;
    for (event_set x : c.configs()) {
        for (event_set y : y_set) {
            if (subset_of(y, x)) {
                out.push_back(x);
                break;
            }
        }
    }
    return out;
}

order_query_result lub(const config_structure& c, const std::vector<event_set>& y_set) {
    for (event_set y : y_set) require_member(c, y);
    event_set all = std::accumulate(y_set.begin(), y_set.end(), event_set{0},
                                    [](event_set a, event_set b) { return a | b; });
    order_query_result r;
    for (event_set z : c.configs())
        if (subset_of(all, z)) r.witnesses.push_back(z);
    // Canonical order puts any least bound first; it still must bound the rest.
    if (!r.witnesses.empty()) {
        event_set least = r.witnesses.front();
        if (std::all_of(r.witnesses.begin(), r.witnesses.end(),
                        [&](event_set z) { return subset_of(least, z); }))
            r.value = least;
    }
    return r;
}

order_query_result glb(const config_structure& c, const std::vector<event_set>& y_set) {
    for (event_set y : y_set) require_member(c, y);
    event_set common = ~event_set{0};
    for (event_set y : y_set) common &= y;
    if (y_set.empty()) common = c.table().universe();
    order_query_result r;
    for (event_set z : c.configs())
        if (subset_of(z, common)) r.witnesses.push_back(z);
    if (!r.witnesses.empty()) {
        event_set greatest = r.witnesses.back();
        if (std::all_of(r.witnesses.begin(), r.witnesses.end(),
                        [&](event_set z) { return subset_of(z, greatest); }))
            r.value = greatest;
    }
    return r;
}

bool compatible(const config_structure& c, event_set x, event_set y) {
    require_member(c, x);
    require_member(c, y);
    event_set join = x | y;
    event_set least = 0;
    bool found = false;
    for (event_set z : c.configs()) {
        if (!subset_of(join, z)) continue;
        if (!found) {
            // First bound in canonical order is the only candidate least.
            least = z;
            found = true;
        } else if (!subset_of(least, z)) {
            return false;
        }
    }
    return found;
}

bool bounded(const config_structure& c, event_set x, event_set y) {
    require_member(c, x);
    require_member(c, y);
    event_set join = x | y;
    for (event_set z : c.configs())
        if (subset_of(join, z)) return true;
    return false;
}

bool orthogonal(const config_structure& c, event_set x, event_set y) {
    require_member(c, x);
    require_member(c, y);
    return !subset_of(x, y) && !subset_of(y, x) && compatible(c, x, y);
}

polarity polarity_of_event(const pointed_structure& p, std::string_view event) {
    std::size_t i = p.base().table().index_checked(event);
    return contains_event(p.referential(), i) ? polarity::negative : polarity::positive;
}

config_class classify_configuration(const pointed_structure& p, event_set x) {
    if (!p.base().contains(x))
        throw domain_error(format_config(p.base().table(), x) + " is not a configuration");
    if ((x & p.referential()) == 0) return config_class::forward;
    if (subset_of(x, p.referential())) return config_class::backward;
    return config_class::mixed;
}

namespace {

// Occurrence counts of one event, split by configuration cardinality: an
// isomorphism invariant used to prune the bijection search.
std::vector<int> occurrence_profile(const config_structure& c, std::size_t e) {
    std::vector<int> prof(c.table().size() + 1, 0);
    for (event_set x : c.configs())
        if (contains_event(x, e)) prof[static_cast<std::size_t>(set_size(x))]++;
    return prof;
}

}  // namespace

std::optional<event_bijection> equivalent(const config_structure& c1, const config_structure& c2,
                                          std::size_t cap) {
    std::size_t n = c1.table().size();
    if (n != c2.table().size()) return std::nullopt;
    if (c1.size() != c2.size()) return std::nullopt;
    if (n > cap)
        throw resource_error("bijection search over " + std::to_string(n) +
                             " events exceeds the cap of " + std::to_string(cap));

    std::vector<std::vector<int>> prof2(n);
    for (std::size_t f = 0; f < n; ++f) prof2[f] = occurrence_profile(c2, f);

    detail::bijection_search s;
    s.n = n;
    s.candidates.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        auto prof = occurrence_profile(c1, e);
        for (std::size_t f = 0; f < n; ++f)
            if (prof == prof2[f]) s.candidates[e].push_back(f);
        if (s.candidates[e].empty()) return std::nullopt;
    }
    s.leaf = [&](const event_bijection& phi) {
        std::vector<event_set> mapped;
        mapped.reserve(c1.size());
        for (event_set x : c1.configs()) {
            event_set y = 0;
            for (std::size_t e = 0; e < n; ++e)
                if (contains_event(x, e)) y |= single_event(phi[e]);
            mapped.push_back(y);
        }
        std::sort(mapped.begin(), mapped.end(), config_canonical_less{});
        return mapped == c2.configs();
    };
    return s.run();
}

std::optional<event_bijection> equivalent(const pointed_structure& p1, const pointed_structure& p2,
                                          std::size_t cap) {
    if (set_size(p1.referential()) != set_size(p2.referential())) return std::nullopt;
    std::size_t n = p1.base().table().size();
    if (n != p2.base().table().size()) return std::nullopt;
    if (p1.base().size() != p2.base().size()) return std::nullopt;
    if (n > cap)
        throw resource_error("bijection search over " + std::to_string(n) +
                             " events exceeds the cap of " + std::to_string(cap));

    // Membership in the referential is preserved by any witness (equal
    // referential sizes make image containment equality), so candidates only
    // pair events from the same side.
    detail::bijection_search s;
    s.n = n;
    s.candidates.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        auto prof = occurrence_profile(p1.base(), e);
        for (std::size_t f = 0; f < n; ++f) {
            if (contains_event(p1.referential(), e) != contains_event(p2.referential(), f))
                continue;
            if (prof == occurrence_profile(p2.base(), f)) s.candidates[e].push_back(f);
        }
        if (s.candidates[e].empty()) return std::nullopt;
    }
    s.leaf = [&](const event_bijection& phi) {
        std::vector<event_set> mapped;
        mapped.reserve(p1.base().size());
        for (event_set x : p1.base().configs()) {
            event_set y = 0;
            for (std::size_t e = 0; e < n; ++e)
                if (contains_event(x, e)) y |= single_event(phi[e]);
            mapped.push_back(y);
        }
        std::sort(mapped.begin(), mapped.end(), config_canonical_less{});
        return mapped == p2.base().configs();
    };
    return s.run();
}

}  // namespace revconf
