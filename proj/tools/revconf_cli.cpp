#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>

#include <CLI11.hpp>

#include "revconf/errors.hpp"
#include "revconf/event_structures.hpp"
#include "revconf/io.hpp"
#include "revconf/oracle.hpp"
#include "revconf/residuation.hpp"
#include "revconf/stability.hpp"
#include "revconf/switching.hpp"

namespace {

using namespace revconf;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

structure_document load(const std::string& path) { return parse(read_input(path)); }

// Comma-separated event names, e.g. "a,b". Empty string is the empty set.
event_set parse_event_list(const event_table& t, const std::string& csv) {
    event_set x = 0;
    std::size_t start = 0;
    if (csv.empty()) return 0;
    while (true) {
        std::size_t comma = csv.find(',', start);
        std::string name = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (name.empty()) throw usage_error("empty event name in \"" + csv + "\"");
        x |= single_event(t.index_checked(name));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return x;
}

const config_structure& family_of(const structure_document& doc) {
    if (const auto* c = std::get_if<config_structure>(&doc)) return *c;
    if (const auto* p = std::get_if<pointed_structure>(&doc)) return p->base();
    throw usage_error(std::string("this command needs a configuration structure, got ") +
                      document_kind(doc));
}

std::string show(const event_table& t, event_set x) { return format_config(t, x); }

struct caps {
    std::size_t value = 0;  // 0 = per-operation defaults

    std::size_t quantifier() const { return value ? value : default_quantifier_cap; }
    std::size_t states() const { return value ? value : 10000; }
    std::size_t iso() const { return value ? value : 10; }
    std::size_t subsets() const { return value ? value : 16; }
};

void add_cap(CLI::App* cmd, caps& c) {
    cmd->add_option("--cap", c.value, "resource cap (quantifiers, states, search)");
}

void print_axiom_line(const event_table& t, const char* label, const axiom_verdict& v,
                      const char* z_label) {
    std::cerr << label << ": " << (v.pass ? "pass" : "fail");
    if (!v.pass) {
        if (v.x) std::cerr << "  x=" << show(t, *v.x);
        if (v.y) std::cerr << " y=" << show(t, *v.y);
        if (v.z) std::cerr << " " << z_label << "=" << show(t, *v.z);
        if (v.missing) std::cerr << " missing=" << show(t, *v.missing);
    }
    std::cerr << "\n";
}

void print_predicate_line(const event_table& t, const char* label, const predicate_verdict& v) {
    std::cerr << label << ": " << (v.pass ? "pass" : "fail");
    if (!v.pass) {
        if (v.witness) std::cerr << "  at " << show(t, *v.witness);
        if (!v.detail.empty()) std::cerr << " (" << v.detail << ")";
    }
    std::cerr << "\n";
}

int cmd_validate(const std::string& file) {
    auto doc = load(file);
    std::cout << serialize(doc) << "\n";
    std::cerr << "valid " << document_kind(doc) << "\n";
    return 0;
}

int cmd_stable(const std::string& file, const caps& cap) {
    auto doc = load(file);
    const config_structure& c = family_of(doc);
    auto report = make_stability_report(c);
    const event_table& t = c.table();
    print_axiom_line(t, "rooted", report.rooted, "");
    print_axiom_line(t, "connected", report.connected, "");
    print_axiom_line(t, "bounded-union-closed", report.bounded_union_closed, "bound");
    print_axiom_line(t, "intersection-closed", report.intersection_closed, "");
    print_axiom_line(t, "coherent", report.coherent, "z");
    std::cerr << "stable: " << (report.stable() ? "yes" : "no") << "\n";

    auto domain = make_domain_report(c, cap.quantifier());
    std::cerr << "compact:";
    for (event_set x : domain.compact) std::cerr << " " << show(t, x);
    std::cerr << "\nprimes:";
    for (event_set x : domain.primes) std::cerr << " " << show(t, x);
    std::cerr << "\n";
    print_predicate_line(t, "finitary", domain.finitary);
    print_predicate_line(t, "coherent-order", domain.coherent_order);
    print_predicate_line(t, "prime-algebraic", domain.prime_algebraic);
    std::cerr << "domain: " << (domain.domain() ? "yes" : "no") << "\n";

    std::cout << serialize(doc) << "\n";
    return report.stable() ? 0 : 1;
}

int cmd_residuate(const std::string& file, bool classical, bool symmetric, const std::string& by) {
    if (classical == symmetric) throw usage_error("pick exactly one of --classical/--symmetric");
    auto doc = load(file);
    if (const auto* p = std::get_if<pointed_structure>(&doc)) {
        if (classical) throw usage_error("pointed structures residuate symmetrically only");
        event_set x = parse_event_list(p->base().table(), by);
        std::cout << serialize(pointed_residual(*p, x)) << "\n";
        return 0;
    }
    const config_structure& c = family_of(doc);
    event_set x = parse_event_list(c.table(), by);
    std::cout << serialize(classical ? classical_residual(c, x) : symmetric_residual(c, x))
              << "\n";
    return 0;
}

int cmd_orbit(const std::string& file) {
    auto doc = load(file);
    const config_structure& c = family_of(doc);
    auto result = orbit(c);
    std::cerr << "orbit members: " << result.members.size() << "\n";
    for (std::size_t i = 0; i < result.members.size(); ++i) {
        std::cerr << "member " << i << " tags:";
        for (event_set tag : result.members[i].tags)
            std::cerr << " " << show(c.table(), tag);
        std::cerr << "\n";
        std::cout << serialize(result.members[i].structure) << "\n";
    }
    return 0;
}

int cmd_same_orbit(const std::string& f1, const std::string& f2) {
    auto d1 = load(f1), d2 = load(f2);
    bool same = same_orbit(family_of(d1), family_of(d2));
    std::cerr << (same ? "same orbit" : "not in the same orbit") << "\n";
    return same ? 0 : 1;
}

int cmd_lts(const std::string& file, const std::string& mode_name, const caps& cap) {
    lts_mode mode;
    if (mode_name == "classical") {
        mode = lts_mode::classical;
    } else if (mode_name == "reversible") {
        mode = lts_mode::reversible_pointed;
    } else {
        throw usage_error("--mode must be classical or reversible");
    }
    auto doc = load(file);
    transition_system ts;
    if (const auto* p = std::get_if<pointed_structure>(&doc)) {
        ts = build_lts(*p, mode, cap.states());
    } else {
        ts = build_lts(family_of(doc), mode, cap.states());
    }
    const event_table& t = std::get_if<pointed_structure>(&doc)
                               ? std::get_if<pointed_structure>(&doc)->base().table()
                               : family_of(doc).table();
    std::cout << "mode: " << (ts.mode == lts_mode::classical ? "classical" : "reversible") << "\n";
    std::cout << "states: " << ts.states.size() << "\n";
    std::cout << "initial: " << ts.initial << "\n";
    for (std::size_t i = 0; i < ts.states.size(); ++i)
        std::cout << "S " << i << " " << show(t, ts.states[i].tag) << "\n";
    for (const auto& tr : ts.transitions)
        std::cout << "T " << tr.source << " " << show(t, tr.label) << " " << tr.target << "\n";
    return 0;
}

int cmd_primes(const std::string& file, const caps& cap) {
    auto doc = load(file);
    const config_structure& c = family_of(doc);
    for (event_set p : complete_primes(c, cap.quantifier()))
        std::cout << show(c.table(), p) << "\n";
    return 0;
}

// Renames the derived events to the source event introduced by each prime
// (the derivative); injectivity of the derivative makes this a bijection.
template <typename EsOf>
EsOf relabel_by_derivative(const EsOf& es, const config_structure& c) {
    std::size_t n = es.prime_of_event.size();
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = c.table().name(derivative(c, es.prime_of_event[i]));
    raw_event_structure raw;
    raw.table = event_table(names);
    raw.causes.assign(n, 0);
    raw.conflict.assign(n, 0);
    std::vector<std::size_t> to_new(n);
    for (std::size_t i = 0; i < n; ++i) to_new[i] = raw.table.index_checked(names[i]);

    const prime_event_structure* base;
    if constexpr (std::is_same_v<EsOf, prime_es_of_structure>) {
        base = &es.pes;
    } else {
        base = &es.pes.pes;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && base->leq(i, j)) raw.causes[to_new[j]] |= single_event(to_new[i]);
            if (base->in_conflict(i, j)) raw.conflict[to_new[j]] |= single_event(to_new[i]);
        }

    EsOf out;
    if constexpr (std::is_same_v<EsOf, prime_es_of_structure>) {
        auto checked = validate_pes(raw);
        if (!checked.ok()) throw integrity_error("relabeled event structure failed validation");
        out.pes = std::move(*checked.pes);
    } else {
        raw_polarized_structure praw;
        praw.raw = std::move(raw);
        praw.sign.assign(n, +1);
        for (std::size_t i = 0; i < n; ++i) praw.sign[to_new[i]] = es.pes.sign[i];
        auto checked = validate_polarized(praw);
        if (!checked.ok()) throw integrity_error("relabeled event structure failed validation");
        out.pes = std::move(*checked.pes);
    }
    out.prime_of_event.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.prime_of_event[to_new[i]] = es.prime_of_event[i];
    return out;
}

int cmd_to_es(const std::string& file, bool delta_names, const caps& cap) {
    auto doc = load(file);
    if (std::get_if<prime_event_structure>(&doc) || std::get_if<polarized_event_structure>(&doc)) {
        std::cout << serialize(doc) << "\n";
        return 0;
    }
    if (const auto* p = std::get_if<pointed_structure>(&doc)) {
        auto es = functor_e_pointed(*p, cap.quantifier());
        if (delta_names) es = relabel_by_derivative(es, p->base());
        std::cout << serialize(es.pes) << "\n";
        return 0;
    }
    const auto& c = std::get<config_structure>(doc);
    auto es = functor_e(c, cap.quantifier());
    if (delta_names) es = relabel_by_derivative(es, c);
    std::cout << serialize(es.pes) << "\n";
    return 0;
}

int cmd_to_cs(const std::string& file, const caps& cap) {
    auto doc = load(file);
    if (const auto* e = std::get_if<prime_event_structure>(&doc)) {
        std::cout << serialize(functor_c(*e, cap.subsets())) << "\n";
        return 0;
    }
    if (const auto* pe = std::get_if<polarized_event_structure>(&doc)) {
        pointed_structure p(functor_c(pe->pes, cap.subsets()), pe->negative_set());
        std::cout << serialize(p) << "\n";
        return 0;
    }
    std::cout << serialize(doc) << "\n";
    return 0;
}

int cmd_switch(const std::string& file, const std::string& on) {
    auto doc = load(file);
    if (const auto* e = std::get_if<prime_event_structure>(&doc)) {
        event_set x = parse_event_list(e->table(), on);
        auto checked = validate_pes(switch_pes(*e, x));
        if (!checked.ok()) throw integrity_error("switched structure failed validation");
        std::cout << serialize(*checked.pes) << "\n";
        return 0;
    }
    if (const auto* pe = std::get_if<polarized_event_structure>(&doc)) {
        event_set x = parse_event_list(pe->pes.table(), on);
        auto checked = validate_polarized(switch_polarized(*pe, x));
        if (!checked.ok()) throw integrity_error("switched structure failed validation");
        std::cout << serialize(*checked.pes) << "\n";
        return 0;
    }
    throw usage_error("switch needs an event structure document; convert with to-es first");
}

int cmd_sigma(const std::string& file, const std::string& by, const caps& cap) {
    auto doc = load(file);
    const config_structure& c = family_of(doc);
    event_set x = parse_event_list(c.table(), by);
    auto m = make_residuation_map(c, x, cap.quantifier());
    for (const auto& [p, image] : m.mapping)
        std::cout << show(c.table(), p) << " -> " << show(c.table(), image) << "\n";
    return 0;
}

int cmd_iso(const std::string& f1, const std::string& f2, const caps& cap) {
    auto d1 = load(f1), d2 = load(f2);
    if (std::string(document_kind(d1)) != document_kind(d2))
        throw usage_error(std::string("cannot compare ") + document_kind(d1) + " with " +
                          document_kind(d2));

    std::optional<event_bijection> phi;
    const event_table* t1 = nullptr;
    const event_table* t2 = nullptr;
    if (const auto* c1 = std::get_if<config_structure>(&d1)) {
        const auto& c2 = std::get<config_structure>(d2);
        phi = equivalent(*c1, c2, cap.iso());
        t1 = &c1->table();
        t2 = &c2.table();
    } else if (const auto* p1 = std::get_if<pointed_structure>(&d1)) {
        const auto& p2 = std::get<pointed_structure>(d2);
        phi = equivalent(*p1, p2, cap.iso());
        t1 = &p1->base().table();
        t2 = &p2.base().table();
    } else if (const auto* e1 = std::get_if<prime_event_structure>(&d1)) {
        const auto& e2 = std::get<prime_event_structure>(d2);
        phi = pes_isomorphic(*e1, e2, cap.iso());
        t1 = &e1->table();
        t2 = &e2.table();
    } else {
        const auto& pe1 = std::get<polarized_event_structure>(d1);
        const auto& pe2 = std::get<polarized_event_structure>(d2);
        phi = polarized_isomorphic(pe1, pe2, cap.iso());
        t1 = &pe1.pes.table();
        t2 = &pe2.pes.table();
    }
    if (!phi) {
        std::cerr << "not isomorphic\n";
        return 1;
    }
    std::cerr << "isomorphic\n";
    for (std::size_t i = 0; i < phi->size(); ++i)
        std::cout << t1->name(i) << " -> " << t2->name((*phi)[i]) << "\n";
    return 0;
}

int cmd_check(const std::string& theorem, std::size_t size, std::optional<std::uint64_t> seed,
              std::size_t samples, std::size_t jobs) {
    std::vector<std::string> ids;
    if (theorem == "all") {
        ids = theorem_ids();
    } else {
        ids.push_back(theorem);
    }
    generator_spec spec;
    spec.universe_size = size;
    spec.seed = seed;
    spec.samples = samples;

    bool all_pass = true;
    for (const auto& id : ids) {
        auto report = check_theorem(id, spec, jobs);
        std::ostringstream line;
        line << report.id << ": " << report.failures.size() << " failures / " << report.instances
             << " instances (" << report.seconds << " s)";
        std::cerr << line.str() << "\n";
        constexpr std::size_t shown = 10;
        for (std::size_t i = 0; i < report.failures.size(); ++i) {
            if (i < shown) std::cerr << "  " << report.failures[i].clause << "\n";
            std::cout << report.failures[i].fixture << "\n";
        }
        if (report.failures.size() > shown)
            std::cerr << "  (" << (report.failures.size() - shown) << " more)\n";
        all_pass = all_pass && report.pass();
    }
    return all_pass ? 0 : 1;
}

int cmd_export_dot(const std::string& file, const std::string& style_name) {
    auto doc = load(file);
    dot_style style;
    if (style_name == "hasse") {
        style = dot_style::hasse;
    } else if (style_name == "es") {
        style = dot_style::es;
    } else if (style_name.empty()) {
        bool es_kind = std::get_if<prime_event_structure>(&doc) ||
                       std::get_if<polarized_event_structure>(&doc);
        style = es_kind ? dot_style::es : dot_style::hasse;
    } else {
        throw usage_error("--style must be hasse or es");
    }
    std::cout << export_dot(doc, style);
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"reversible configuration structures toolkit"};
    app.require_subcommand(1);

    std::string file = "-", file2;
    std::string by, on, mode, style, theorem = "all";
    bool classical = false, symmetric = false, delta_names = false;
    std::size_t size = 3, samples = 2000, jobs = 1;
    std::optional<std::uint64_t> seed;
    caps cap;

    auto* validate_cmd = app.add_subcommand("validate", "parse, validate, reprint canonically");
    validate_cmd->add_option("file", file, "input path or -");
    add_cap(validate_cmd, cap);

    auto* stable_cmd = app.add_subcommand("stable", "stability and domain report");
    stable_cmd->add_option("file", file);
    add_cap(stable_cmd, cap);

    auto* residuate_cmd = app.add_subcommand("residuate", "residual after a configuration");
    residuate_cmd->add_option("file", file);
    residuate_cmd->add_flag("--classical", classical, "forward-only residual");
    residuate_cmd->add_flag("--symmetric", symmetric, "symmetric-difference residual");
    residuate_cmd->add_option("--by", by, "configuration, comma-separated events");
    add_cap(residuate_cmd, cap);

    auto* orbit_cmd = app.add_subcommand("orbit", "all symmetric residuals, deduplicated");
    orbit_cmd->add_option("file", file);
    add_cap(orbit_cmd, cap);

    auto* same_orbit_cmd = app.add_subcommand("same-orbit", "orbit membership of two structures");
    same_orbit_cmd->add_option("file1", file)->required();
    same_orbit_cmd->add_option("file2", file2)->required();
    add_cap(same_orbit_cmd, cap);

    auto* lts_cmd = app.add_subcommand("lts", "transition system of a structure");
    lts_cmd->add_option("file", file);
    lts_cmd->add_option("--mode", mode, "classical or reversible")->required();
    add_cap(lts_cmd, cap);

    auto* primes_cmd = app.add_subcommand("primes", "complete prime configurations");
    primes_cmd->add_option("file", file);
    add_cap(primes_cmd, cap);

    auto* to_es_cmd = app.add_subcommand("to-es", "event structure of a stable family");
    to_es_cmd->add_option("file", file);
    to_es_cmd->add_flag("--delta-names", delta_names, "name derived events by their derivative");
    add_cap(to_es_cmd, cap);

    auto* to_cs_cmd = app.add_subcommand("to-cs", "configuration family of an event structure");
    to_cs_cmd->add_option("file", file);
    add_cap(to_cs_cmd, cap);

    auto* switch_cmd = app.add_subcommand("switch", "switch an event structure on a configuration");
    switch_cmd->add_option("file", file);
    switch_cmd->add_option("--on", on, "configuration, comma-separated events");
    add_cap(switch_cmd, cap);

    auto* sigma_cmd = app.add_subcommand("sigma", "prime-to-prime residuation map");
    sigma_cmd->add_option("file", file);
    sigma_cmd->add_option("--by", by, "configuration, comma-separated events");
    add_cap(sigma_cmd, cap);

    auto* iso_cmd = app.add_subcommand("iso", "isomorphism between two documents");
    iso_cmd->add_option("file1", file)->required();
    iso_cmd->add_option("file2", file2)->required();
    add_cap(iso_cmd, cap);

    auto* check_cmd = app.add_subcommand("check", "run a theorem over generated structures");
    check_cmd->add_option("--theorem", theorem, "theorem id, or all");
    check_cmd->add_option("--size", size, "universe size, 1..5");
    check_cmd->add_option("--seed", seed, "sampling seed (mandatory at size 5)");
    check_cmd->add_option("--samples", samples, "sample count at size 5");
    check_cmd->add_option("--jobs", jobs, "worker threads");
    add_cap(check_cmd, cap);

    auto* export_cmd = app.add_subcommand("export-dot", "graphviz rendering");
    export_cmd->add_option("file", file);
    export_cmd->add_option("--style", style, "hasse or es (default by kind)");
    add_cap(export_cmd, cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (validate_cmd->parsed()) return cmd_validate(file);
    if (stable_cmd->parsed()) return cmd_stable(file, cap);
    if (residuate_cmd->parsed()) return cmd_residuate(file, classical, symmetric, by);
    if (orbit_cmd->parsed()) return cmd_orbit(file);
    if (same_orbit_cmd->parsed()) return cmd_same_orbit(file, file2);
    if (lts_cmd->parsed()) return cmd_lts(file, mode, cap);
    if (primes_cmd->parsed()) return cmd_primes(file, cap);
    if (to_es_cmd->parsed()) return cmd_to_es(file, delta_names, cap);
    if (to_cs_cmd->parsed()) return cmd_to_cs(file, cap);
    if (switch_cmd->parsed()) return cmd_switch(file, on);
    if (sigma_cmd->parsed()) return cmd_sigma(file, by, cap);
    if (iso_cmd->parsed()) return cmd_iso(file, file2, cap);
    if (check_cmd->parsed()) return cmd_check(theorem, size, seed, samples, jobs);
    if (export_cmd->parsed()) return cmd_export_dot(file, style);
    throw usage_error("no command given");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        if (e.line > 0) {
            std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
        } else {
            std::cerr << "parse error: " << e.what() << "\n";
        }
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
