// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Criteria 1 drives the installed CLI; the rest go through the library.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "revconf/errors.hpp"
#include "revconf/event_structures.hpp"
#include "revconf/io.hpp"
#include "revconf/oracle.hpp"
#include "revconf/residuation.hpp"
#include "revconf/stability.hpp"

namespace {

namespace fs = std::filesystem;
using namespace revconf;

struct options {
    std::size_t only = 0;  // 0 = all
    std::size_t jobs = 1;
    std::string tool = REVCONF_CLI_PATH;
    std::string fixtures = REVCONF_FIXTURES_DIR;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// criterion 1: every manifest line replays through the tool and the stdout
// bytes match the committed expected file.
bool replay_manifest(const options& opt, std::string& why) {
    fs::path manifest = fs::path(opt.fixtures) / "expected" / "manifest.txt";
    std::ifstream in(manifest);
    if (!in) {
        why = "cannot read " + manifest.string();
        return false;
    }
    fs::path scratch = fs::temp_directory_path() / ("revconf_replay_" + std::to_string(::getpid()));
    fs::create_directories(scratch);

    std::string line;
    std::size_t line_no = 0, replayed = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream words(line);
        std::string expected_name, word, args;
        words >> expected_name;
        while (words >> word) {
            if (word.rfind("fx:", 0) == 0)
                word = (fs::path(opt.fixtures) / word.substr(3)).string();
            args += " " + word;
        }
        fs::path out = scratch / ("out" + std::to_string(line_no));
        std::string cmd = opt.tool + args + " > " + out.string() + " 2> /dev/null";
        int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            why = "line " + std::to_string(line_no) + " exited nonzero:" + args;
            return false;
        }
        std::string expected = slurp(fs::path(opt.fixtures) / "expected" / expected_name);
        std::string got = slurp(out);
        if (expected.empty() || expected != got) {
            why = expected_name + " does not match the tool output";
            return false;
        }
        ++replayed;
    }
    if (replayed == 0) {
        why = "manifest is empty";
        return false;
    }
    return true;
}

config_structure load_cs(const options& opt, const std::string& name) {
    return std::get<config_structure>(parse(slurp(fs::path(opt.fixtures) / name)));
}

// criterion 2: each member of the cube family violates exactly one axiom,
// with the expected missing configuration as witness.
bool exact_axiom_verdicts(const options& opt, std::string& why) {
    struct expectation {
        const char* file;
        const char* axiom;
        const char* missing;
    };
    const expectation table[] = {
        {"cube-top-removed.cs", "coherent", "{a,b,c}"},
        {"cube-c-removed.cs", "intersection-closed", "{c}"},
        {"cube-ab-removed.cs", "bounded-union-closed", "{a,b}"},
    };
    for (const auto& e : table) {
        config_structure c = load_cs(opt, e.file);
        auto report = make_stability_report(c);
        std::vector<std::pair<std::string, const axiom_verdict*>> verdicts = {
            {"rooted", &report.rooted},
            {"connected", &report.connected},
            {"bounded-union-closed", &report.bounded_union_closed},
            {"intersection-closed", &report.intersection_closed},
            {"coherent", &report.coherent},
        };
        for (const auto& [name, v] : verdicts) {
            bool expect_fail = name == e.axiom;
            if (v->pass == expect_fail) {
                why = std::string(e.file) + ": " + name + (v->pass ? " passed" : " failed") +
                      " unexpectedly";
                return false;
            }
            if (expect_fail) {
                std::string missing =
                    v->missing ? format_config(c.table(), *v->missing) : std::string("(none)");
                if (missing != e.missing) {
                    why = std::string(e.file) + ": witness " + missing + ", wanted " + e.missing;
                    return false;
                }
            }
        }
    }
    return true;
}

bool run_ids(const std::vector<std::string>& ids, std::size_t from, std::size_t to,
             std::size_t jobs, std::string& why) {
    for (std::size_t n = from; n <= to; ++n) {
        generator_spec spec;
        spec.universe_size = n;
        for (const auto& id : ids) {
            auto report = check_theorem(id, spec, jobs);
            if (!report.pass()) {
                why = id + " at size " + std::to_string(n) + ": " +
                      std::to_string(report.failures.size()) + " failures, first: " +
                      report.failures.front().clause;
                return false;
            }
            if (report.instances == 0) {
                why = id + " at size " + std::to_string(n) + " ran zero instances";
                return false;
            }
        }
    }
    return true;
}

// criterion 3: every theorem, exhaustively, all universes up to 3 events.
bool sweep_small(const options& opt, std::string& why) {
    return run_ids(theorem_ids(), 1, 3, opt.jobs, why);
}

// criterion 4: the headline theorems at size 4, plus a determinism probe
// (the merged report must not depend on the worker count).
bool sweep_main(const options& opt, std::string& why) {
    if (!run_ids({"stable-orbits", "adequacy", "effect-cases", "polarity-switch"}, 4, 4, opt.jobs,
                 why))
        return false;
    generator_spec spec;
    spec.universe_size = 4;
    auto serial = check_theorem("stable-orbits", spec, 1);
    auto parallel = check_theorem("stable-orbits", spec, opt.jobs ? opt.jobs : 4);
    if (serial.instances != parallel.instances ||
        serial.failures.size() != parallel.failures.size()) {
        why = "stable-orbits report depends on the worker count";
        return false;
    }
    return true;
}

// criterion 5: the two functors invert each other on every instance up to
// size 4.
bool roundtrip(const options& opt, std::string& why) {
    return run_ids({"winskel-roundtrip", "c-of-e-stable"}, 1, 4, opt.jobs, why);
}

bool roundtrip_doc(const structure_document& doc, std::string& why) {
    std::string text = serialize(doc);
    structure_document back = parse(text);
    if (serialize(back) != text) {
        why = "serialize/parse changed " + text;
        return false;
    }
    return true;
}

// criterion 6: parse inverts serialize on every generated structure, every
// committed fixture, and the causality closure stays canonical.
bool serialization(const options& opt, std::string& why) {
    for (std::size_t n = 1; n <= 3; ++n) {
        generator_spec spec;
        spec.universe_size = n;
        for (const auto& c : enumerate_structures(spec))
            if (!roundtrip_doc(c, why)) return false;
        for (const auto& e : enumerate_pes(spec))
            if (!roundtrip_doc(e, why)) return false;
    }
    std::size_t fixture_count = 0;
    for (const auto& entry : fs::directory_iterator(opt.fixtures)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".cs") continue;
        ++fixture_count;
        structure_document doc = parse(slurp(entry.path()));
        if (!roundtrip_doc(doc, why)) {
            why = entry.path().filename().string() + ": " + why;
            return false;
        }
    }
    if (fixture_count < 10) {
        why = "fixture corpus looks incomplete (" + std::to_string(fixture_count) + " files)";
        return false;
    }

    auto closed = parse(R"({"kind":"pes","events":["a","b","c"],)"
                        R"("causality":[["a","b"],["b","c"],["a","c"]],"conflict":[]})");
    std::string canonical = R"({"kind":"pes","events":["a","b","c"],)"
                            R"("causality":[["a","b"],["b","c"]],"conflict":[]})";
    if (serialize(closed) != canonical) {
        why = "causality cover reduction is not canonical: " + serialize(closed);
        return false;
    }
    return true;
}

// criterion 7: pointed residuation reaches |configs| distinct structures
// (the action is free), while the unpointed action on the fixed-point
// example identifies the residual at {b} with the origin.
bool freeness(const options& opt, std::string& why) {
    for (std::size_t n = 1; n <= 3; ++n) {
        generator_spec spec;
        spec.universe_size = n;
        for (const auto& c : enumerate_structures(spec)) {
            for (event_set r : c.configs()) {
                pointed_structure p(c, r);
                std::vector<pointed_structure> seen;
                for (event_set x : c.configs()) {
                    pointed_structure moved = pointed_residual(p, x);
                    for (const auto& old : seen)
                        if (old == moved) {
                            why = "pointed orbit collapsed at " +
                                  format_config(c.table(), x) + " with referential " +
                                  format_config(c.table(), r);
                            return false;
                        }
                    seen.push_back(std::move(moved));
                }
                if (seen.size() != c.configs().size()) {
                    why = "pointed orbit cardinality mismatch";
                    return false;
                }
            }
        }
    }

    config_structure fp = load_cs(opt, "fixed-point.cs");
    auto orb = orbit(fp);
    const event_table& t = fp.table();
    for (const auto& member : orb.members) {
        bool has_root = false, has_b = false;
        for (event_set tag : member.tags) {
            if (tag == 0) has_root = true;
            if (format_config(t, tag) == "{b}") has_b = true;
        }
        if (has_root != has_b) {
            why = "the members tagged {} and {b} differ";
            return false;
        }
        if (has_root && !(member.structure == fp)) {
            why = "the member tagged {b} is not the origin";
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    options opt;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto value = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << flag << " needs a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--only") {
            opt.only = std::stoul(value("--only"));
        } else if (arg == "--jobs") {
            opt.jobs = std::stoul(value("--jobs"));
        } else if (arg == "--tool") {
            opt.tool = value("--tool");
        } else if (arg == "--fixtures") {
            opt.fixtures = value("--fixtures");
        } else {
            std::cerr << "unknown flag " << arg << "\n";
            return 2;
        }
    }

    struct criterion {
        const char* name;
        bool (*run)(const options&, std::string&);
    };
    const criterion criteria[] = {
        {"worked examples replay bit-exactly", replay_manifest},
        {"cube family fails exactly one axiom each", exact_axiom_verdicts},
        {"every theorem holds exhaustively to size 3", sweep_small},
        {"main theorems hold exhaustively at size 4", sweep_main},
        {"event structure round-trip to size 4", roundtrip},
        {"serialization round-trip", serialization},
        {"pointed residuation acts freely", freeness},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        if (opt.only != 0 && opt.only != i + 1) continue;
        std::string why;
        auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = criteria[i].run(opt, why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
             << criteria[i].name << " (" << seconds << " s)";
        if (!pass) line << " -- " << why;
        std::cout << line.str() << "\n";
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
