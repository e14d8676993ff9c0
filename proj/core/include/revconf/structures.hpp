#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revconf/events.hpp"

namespace revconf {

// A finite family of configurations over a finite event universe, ordered by
// inclusion. Values are immutable after construction; every operation is a
// pure function. Rootedness is NOT enforced here so that validation can
// report it; operations that require a valid structure say so.
class config_structure {
public:
    config_structure() : configs_{0} {}
    // Sorts configurations canonically and drops duplicates. Masks must stay
    // within the table's universe.
    config_structure(event_table table, std::vector<event_set> configs);

    const event_table& table() const { return table_; }
    const std::vector<event_set>& configs() const { return configs_; }
    std::size_t size() const { return configs_.size(); }

    bool contains(event_set x) const;
    // Position in canonical order; throws domain_error if absent.
    std::size_t index_of(event_set x) const;
    bool rooted() const { return contains(0); }

    // Identity equality: same universe names, same configuration family.
    bool operator==(const config_structure&) const = default;

private:
    event_table table_;
    std::vector<event_set> configs_;
};

// A configuration structure with a distinguished member configuration (the
// referential) recording the computational past. Events inside it are
// negative, the others positive.
class pointed_structure {
public:
    pointed_structure() = default;
    // Throws domain_error when the referential is not a configuration.
    pointed_structure(config_structure base, event_set referential);

    const config_structure& base() const { return base_; }
    event_set referential() const { return referential_; }
    bool initial() const { return referential_ == 0; }

    bool operator==(const pointed_structure&) const = default;

private:
    config_structure base_;
    event_set referential_ = 0;
};

struct validation_report {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

// Reports every violated invariant (currently: missing root). Configurations
// escaping the universe cannot be represented by config_structure itself;
// that violation is caught at the document level in io.
validation_report validate(const config_structure& c);
validation_report validate(const pointed_structure& p);

// Order queries. Preconditions: every member of y_set (and x, y) is a
// configuration of c; violations throw domain_error.

// Members of c below (resp. above) some element of y_set.
std::vector<event_set> down_set(const config_structure& c, const std::vector<event_set>& y_set);
std::vector<event_set> up_set(const config_structure& c, const std::vector<event_set>& y_set);

struct order_query_result {
    std::optional<event_set> value;
    // The bound set examined: all upper (resp. lower) bounds of the query.
    std::vector<event_set> witnesses;
};

// Least upper / greatest lower bound of y_set within c. The value is absent
// both when no bound exists and when bounds exist but none is least
// (greatest); the witnesses distinguish the two.
order_query_result lub(const config_structure& c, const std::vector<event_set>& y_set);
order_query_result glb(const config_structure& c, const std::vector<event_set>& y_set);

// x and y have a least upper bound in c.
bool compatible(const config_structure& c, event_set x, event_set y);
// Some configuration of c contains x ∪ y. Weaker than compatible on
// unstable structures.
bool bounded(const config_structure& c, event_set x, event_set y);
// Compatible and inclusion-incomparable.
bool orthogonal(const config_structure& c, event_set x, event_set y);

enum class polarity : int { negative = -1, positive = +1 };

// Negative exactly for events of the referential. Throws domain_error for
// names outside the universe.
polarity polarity_of_event(const pointed_structure& p, std::string_view event);

enum class config_class { forward, backward, mixed };

// Backward: nonempty and inside the referential. Forward: disjoint from the
// referential (the empty configuration counts as forward). Mixed: the rest.
config_class classify_configuration(const pointed_structure& p, event_set x);

// A bijection between two universes, as a map from event index in the first
// table to event index in the second.
using event_bijection = std::vector<std::size_t>;

// Searches for a universe bijection carrying the configurations of c1 exactly
// onto those of c2. Backtracking with occurrence-profile pruning; universes
// larger than cap events raise resource_error.
std::optional<event_bijection> equivalent(const config_structure& c1, const config_structure& c2,
                                          std::size_t cap = 10);

// Pointed variant: the bijection must also carry one referential onto the
// other.
std::optional<event_bijection> equivalent(const pointed_structure& p1, const pointed_structure& p2,
                                          std::size_t cap = 10);

}  // namespace revconf
