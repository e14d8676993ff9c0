#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "revconf/event_structures.hpp"

namespace revconf {

enum class generator_kind { all_rooted, stable_only, all_pes };

struct generator_spec {
    std::size_t universe_size = 3;  // 1..5
    generator_kind kind = generator_kind::all_rooted;
    // Size 5 is sampling-only: seed and sample count become mandatory.
    std::optional<std::uint64_t> seed;
    std::size_t samples = 2000;
};

// Event names used by generated structures: a, b, c, d, e.
event_table generator_table(std::size_t universe_size);

// Every rooted family over the universe exactly once (all subsets of the
// nonempty subsets, root always included), in increasing family-code order;
// stable_only filters through the stability report. At size 5 a seeded
// sample is drawn instead; a missing seed raises usage_error.
std::vector<config_structure> enumerate_structures(const generator_spec& spec);

// Streaming variant: callback per structure, stop when it returns false.
void for_each_structure(const generator_spec& spec,
                        const std::function<bool(const config_structure&)>& fn);

// Every (partial order, conflict) pair over the universe satisfying the
// event structure axioms, exactly once up to identity of relations.
std::vector<prime_event_structure> enumerate_pes(const generator_spec& spec);

void for_each_pes(const generator_spec& spec,
                  const std::function<bool(const prime_event_structure&)>& fn);

struct theorem_failure {
    std::string fixture;  // serialized so the case replays through the CLI
    std::string clause;
};

struct theorem_report {
    std::string id;
    std::uint64_t instances = 0;
    std::vector<theorem_failure> failures;
    double seconds = 0.0;
    bool pass() const { return failures.empty(); }
};

// All known theorem check ids, in documentation order.
const std::vector<std::string>& theorem_ids();

// Runs one property over the generated stream. Workers split the stream into
// chunks; reports merge deterministically (failures ordered by generation
// index), so jobs > 1 changes nothing but wall-clock. Unknown ids raise
// usage_error.
theorem_report check_theorem(const std::string& id, const generator_spec& spec,
                             std::size_t jobs = 1);

}  // namespace revconf
