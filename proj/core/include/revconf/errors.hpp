#pragma once

#include <stdexcept>
#include <string>

namespace revconf {

// Semantic failure: precondition violated, invalid structure, no isomorphism.
// CLI exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A property that is supposed to be unconditionally true broke. Still exit
// code 1 at the CLI, but the message marks it as an internal inconsistency.
struct integrity_error : domain_error {
    explicit integrity_error(const std::string& what)
        : domain_error("internal inconsistency: " + what) {}
};

// Bad flags, unknown command, unknown theorem id. CLI exit code 2.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. CLI exit code 2.
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, int line_, int column_)
        : std::runtime_error(what), line(line_), column(column_) {}
    int line;
    int column;
};

// A configurable cap (universe size, state count, subset enumeration) was
// exceeded. CLI exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace revconf
