#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "revconf/event_structures.hpp"
#include "revconf/structures.hpp"

namespace revconf {

// One self-describing document per structure kind ("kind" field: "cs",
// "pointed-cs", "pes", "polarized-pes"), so a single file extension serves
// all four.
using structure_document =
    std::variant<config_structure, pointed_structure, prime_event_structure,
                 polarized_event_structure>;

// Strict parse: JSON syntax errors carry line/column (parse_error); semantic
// problems relative to the declared kind (unknown events, bad tokens,
// missing root, violated event structure axioms) throw domain_error with
// every violation listed. Causality pairs may form any relation whose
// closure is a partial order; the stored ≤ is the reflexive-transitive
// closure.
structure_document parse(const std::string& text);

// Canonical form, one line: fixed key order; events sorted; configurations
// sorted by (cardinality, lex); relation pair lists sorted; causality
// emitted as its cover relation only; polarity omitted when all positive;
// referential omitted when empty.
std::string serialize(const structure_document& doc);

enum class dot_style { hasse, es };

// Graphviz text. Hasse style draws the configurations of a (pointed)
// configuration structure as an inclusion diagram (covers only, referential
// marked); es style draws events with solid cover edges for causality,
// dashed edges for conflict, and +/- suffixes for polarity. Event structure
// documents rendered in hasse style are first sent through their
// configuration family; hasse is the default for configuration kinds and es
// for event structure kinds.
std::string export_dot(const structure_document& doc, dot_style style);

// Kind tag of a parsed document ("cs", "pointed-cs", "pes", "polarized-pes").
const char* document_kind(const structure_document& doc);

}  // namespace revconf
