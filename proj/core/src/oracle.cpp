#include "revconf/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "revconf/errors.hpp"
#include "revconf/io.hpp"
#include "revconf/residuation.hpp"
#include "revconf/switching.hpp"

namespace revconf {

event_table generator_table(std::size_t universe_size) {
    static const char* names[] = {"a", "b", "c", "d", "e"};
    if (universe_size < 1 || universe_size > 5)
        throw usage_error("generator universes span 1 to 5 events");
    return event_table(
        std::vector<std::string>(names, names + universe_size));
}

namespace {

constexpr std::uint64_t rooted_family_count(std::size_t n) {
    return std::uint64_t{1} << ((std::uint64_t{1} << n) - 1);
}

config_structure structure_from_code(const event_table& t, std::uint64_t code) {
    std::vector<event_set> configs{0};
    event_set universe = t.universe();
    for (event_set m = 1; m <= universe; ++m)
        if ((code >> (m - 1)) & 1u) configs.push_back(m);
    return {t, std::move(configs)};
}

void validate_spec(const generator_spec& spec) {
    if (spec.universe_size < 1 || spec.universe_size > 5)
        throw usage_error("generator universes span 1 to 5 events");
    if (spec.universe_size == 5 && spec.kind != generator_kind::all_pes) {
        if (!spec.seed)
            throw usage_error("size 5 enumerates 2^31 families; pass a seed to sample instead");
        if (spec.samples == 0) throw usage_error("sample count must be positive");
    }
}

// The exhaustive stream is the ascending family-code order; the sampled
// stream at size 5 is the seeded engine's draw order. Both are canonical for
// failure reporting.
std::vector<std::uint64_t> structure_codes(const generator_spec& spec) {
    validate_spec(spec);
    std::vector<std::uint64_t> codes;
    if (spec.universe_size <= 4) {
        codes.resize(rooted_family_count(spec.universe_size));
        for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = i;
    } else {
        std::mt19937_64 engine(*spec.seed);
        codes.reserve(spec.samples);
        const std::uint64_t space = rooted_family_count(5);
        for (std::size_t i = 0; i < spec.samples; ++i) codes.push_back(engine() % space);
    }
    return codes;
}

}  // namespace

void for_each_structure(const generator_spec& spec,
                        const std::function<bool(const config_structure&)>& fn) {
    event_table t = generator_table(spec.universe_size);
    for (std::uint64_t code : structure_codes(spec)) {
        config_structure c = structure_from_code(t, code);
        if (spec.kind == generator_kind::stable_only && !is_stable(c)) continue;
        if (!fn(c)) return;
    }
}

std::vector<config_structure> enumerate_structures(const generator_spec& spec) {
    if (spec.kind == generator_kind::all_pes)
        throw usage_error("enumerate_structures does not produce event structures");
    std::vector<config_structure> out;
    for_each_structure(spec, [&](const config_structure& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

void for_each_pes(const generator_spec& spec,
                  const std::function<bool(const prime_event_structure&)>& fn) {
    if (spec.universe_size > 4)
        throw usage_error("exhaustive event structure enumeration is capped at 4 events");
    event_table t = generator_table(spec.universe_size);
    std::size_t n = spec.universe_size;

    // Ordered distinct pairs index the strict-causality candidate bits;
    // unordered pairs index the conflict bits.
    std::vector<std::pair<std::size_t, std::size_t>> ordered, unordered;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            ordered.emplace_back(i, j);
            if (i < j) unordered.emplace_back(i, j);
        }

    for (std::uint64_t oc = 0; oc < (std::uint64_t{1} << ordered.size()); ++oc) {
        raw_event_structure raw;
        raw.table = t;
        raw.causes.assign(n, 0);
        raw.conflict.assign(n, 0);
        for (std::size_t b = 0; b < ordered.size(); ++b)
            if ((oc >> b) & 1u) raw.causes[ordered[b].second] |= single_event(ordered[b].first);
        // Candidate orders that are not already closed partial orders would
        // duplicate their closures; keep exactly the closed ones.
        {
            auto v = validate_pes(raw);
            if (!v.ok()) continue;
            bool closed = true;
            for (std::size_t e = 0; e < n && closed; ++e)
                if ((v.pes->below(e) & ~single_event(e)) != raw.causes[e]) closed = false;
            if (!closed) continue;
        }
        for (std::uint64_t cc = 0; cc < (std::uint64_t{1} << unordered.size()); ++cc) {
            for (std::size_t b = 0; b < unordered.size(); ++b) {
                bool on = (cc >> b) & 1u;
                auto [i, j] = unordered[b];
                raw.conflict[i] =
                    on ? (raw.conflict[i] | single_event(j)) : (raw.conflict[i] & ~single_event(j));
                raw.conflict[j] =
                    on ? (raw.conflict[j] | single_event(i)) : (raw.conflict[j] & ~single_event(i));
            }
            auto v = validate_pes(raw);
            if (!v.ok()) continue;
            if (!fn(*v.pes)) return;
        }
    }
}

std::vector<prime_event_structure> enumerate_pes(const generator_spec& spec) {
    std::vector<prime_event_structure> out;
    for_each_pes(spec, [&](const prime_event_structure& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

namespace {

struct check_sink {
    theorem_report* report;
    const config_structure* current_cs = nullptr;
    const prime_event_structure* current_pes = nullptr;

    void fail(const std::string& clause) const {
        theorem_failure f;
        if (current_cs) {
            f.fixture = serialize(structure_document(*current_cs));
        } else if (current_pes) {
            f.fixture = serialize(structure_document(*current_pes));
        }
        f.clause = clause;
        report->failures.push_back(std::move(f));
    }
};

std::string render(const config_structure& c, event_set x) {
    return format_config(c.table(), x);
}

void check_monoid_action(const config_structure& c, const check_sink& sink) {
    if (classical_residual(c, 0) != c) sink.fail("residuation by the root changes the structure");
    for (event_set y : c.configs()) {
        config_structure after_y = classical_residual(c, y);
        for (event_set x : after_y.configs()) {
            if (classical_residual(after_y, x) != classical_residual(c, x | y))
                sink.fail("composition differs from the combined residual at y=" + render(c, y) +
                          ", x=" + render(c, x));
        }
    }
}

void check_group_action(const config_structure& c, const check_sink& sink) {
    if (symmetric_residual(c, 0) != c)
        sink.fail("symmetric residuation by the root changes the structure");
    for (event_set x : c.configs()) {
        config_structure after_x = symmetric_residual(c, x);
        if (symmetric_residual(after_x, x) != c)
            sink.fail("double residuation by " + render(c, x) + " is not the identity");
        if (after_x.size() != c.size())
            sink.fail("residuation by " + render(c, x) + " changes the configuration count");
        for (event_set y : after_x.configs()) {
            if (symmetric_residual(after_x, y) != symmetric_residual(c, x ^ y))
                sink.fail("composition differs from the combined residual at x=" + render(c, x) +
                          ", y=" + render(c, y));
        }
    }
}

void check_conservative_extension(const config_structure& c, const check_sink& sink) {
    for (event_set x : c.configs()) {
        auto classical = classical_residual(c, x);
        auto symmetric = symmetric_residual(c, x);
        if (!std::includes(symmetric.configs().begin(), symmetric.configs().end(),
                           classical.configs().begin(), classical.configs().end(),
                           config_canonical_less{}))
            sink.fail("classical residual after " + render(c, x) +
                      " is not contained in the symmetric residual");
    }
}

void check_free_action(const config_structure& c, const check_sink& sink) {
    for (event_set r : c.configs()) {
        pointed_structure p(c, r);
        for (event_set y : c.configs()) {
            for (event_set z : c.configs()) {
                if (y == z) continue;
                if (pointed_residual(p, y) == pointed_residual(p, z)) {
                    sink.fail("pointed residuals by " + render(c, y) + " and " + render(c, z) +
                              " coincide with referential " + render(c, r));
                    return;
                }
            }
        }
    }
}

void check_c_of_e_stable(const prime_event_structure& e, const check_sink& sink) {
    auto report = make_stability_report(functor_c(e));
    if (!report.stable()) sink.fail("configuration family of the event structure is not stable");
}

// Verifies the map p -> single added event as a family bijection: mapping
// every configuration of E(c) through the derivatives must reproduce c's
// family exactly.
void check_winskel_cs_side(const config_structure& c, const check_sink& sink) {
    auto es = functor_e(c);
    std::vector<std::size_t> delta(es.prime_of_event.size());
    for (std::size_t i = 0; i < es.prime_of_event.size(); ++i)
        delta[i] = derivative(c, es.prime_of_event[i]);
    std::vector<event_set> image;
    for (event_set pc : configurations(es.pes)) {
        event_set x = 0;
        for (std::size_t i = 0; i < delta.size(); ++i)
            if (contains_event(pc, i)) x |= single_event(delta[i]);
        image.push_back(x);
    }
    std::sort(image.begin(), image.end(), config_canonical_less{});
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image != c.configs())
        sink.fail("configurations of the derived event structure do not reproduce the family");
}

void check_winskel_pes_side(const prime_event_structure& e, const check_sink& sink) {
    auto c = functor_c(e);
    auto back = functor_e(c);
    if (back.prime_of_event.size() != e.size()) {
        sink.fail("rebuilt event structure has a different event count");
        return;
    }
    // Witness: each prime maps to its derivative, an event of the original.
    event_bijection phi(back.prime_of_event.size());
    std::vector<bool> hit(e.size(), false);
    for (std::size_t i = 0; i < back.prime_of_event.size(); ++i) {
        phi[i] = derivative(c, back.prime_of_event[i]);
        hit[phi[i]] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        sink.fail("derivatives do not cover the original events");
        return;
    }
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) {
            if (back.pes.leq(i, j) != e.leq(phi[i], phi[j])) {
                sink.fail("causality is not preserved by the derivative witness");
                return;
            }
            if (back.pes.in_conflict(i, j) != e.in_conflict(phi[i], phi[j])) {
                sink.fail("conflict is not preserved by the derivative witness");
                return;
            }
        }
}

void check_stable_orbits(const config_structure& c, const check_sink& sink) {
    for (event_set x : c.configs()) {
        auto report = make_stability_report(symmetric_residual(c, x));
        if (!report.stable())
            sink.fail("residual after " + render(c, x) + " is not stable");
    }
}

void check_unique_predecessor(const config_structure& c, const check_sink& sink) {
    auto primes = complete_primes(c);
    for (event_set p : c.configs()) {
        if (p == 0) continue;
        bool is_prime = std::find(primes.begin(), primes.end(), p) != primes.end();
        bool unique_pred = pred(c, p).has_value();
        if (is_prime != unique_pred)
            sink.fail(render(c, p) + (is_prime ? " is prime without" : " is not prime despite") +
                      " a unique immediate predecessor");
    }
}

void check_event_introduction(const config_structure& c, const check_sink& sink) {
    auto primes = complete_primes(c);
    std::vector<std::size_t> delta(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) delta[i] = derivative(c, primes[i]);
    for (event_set x : c.configs()) {
        for (std::size_t a = 0; a < c.table().size(); ++a) {
            bool occurs = contains_event(x, a);
            bool introduced = false;
            for (std::size_t i = 0; i < primes.size() && !introduced; ++i)
                introduced = delta[i] == a && subset_of(primes[i], x);
            if (occurs != introduced)
                sink.fail("event " + c.table().name(a) + (occurs ? " occurs in " : " missing from ") +
                          render(c, x) + " against its introducing primes");
        }
    }
}

void check_introducer_unicity(const config_structure& c, const check_sink& sink) {
    auto primes = complete_primes(c);
    std::map<std::size_t, event_set> by_derivative;
    for (event_set p : primes) {
        auto [it, fresh] = by_derivative.emplace(derivative(c, p), p);
        if (!fresh)
            sink.fail("primes " + render(c, it->second) + " and " + render(c, p) +
                      " share a derivative");
    }
}

void check_effect_cases(const config_structure& c, const check_sink& sink) {
    for (event_set x : c.configs()) {
        auto m = make_residuation_map(c, x);
        for (std::size_t i = 0; i < m.mapping.size(); ++i) {
            for (std::size_t j = i + 1; j < m.mapping.size(); ++j) {
                event_set p = m.mapping[i].first, q = m.mapping[j].first;
                try {
                    auto r = classify_effect(m, p, q);
                    if (!r.conclusion_holds)
                        sink.fail(std::string(effect_case_name(r.tag)) + " conclusion fails at p=" +
                                  render(c, r.p) + ", q=" + render(c, r.q) + ", x=" + render(c, x));
                } catch (const integrity_error& e) {
                    sink.fail(std::string("premise not unique: ") + e.what() + " (p=" +
                              render(c, p) + ", q=" + render(c, q) + ", x=" + render(c, x) + ")");
                }
            }
        }
    }
}

void check_adequacy(const config_structure& c, const check_sink& sink) {
    for (event_set x : c.configs()) {
        auto r = adequacy_check(c, x);
        if (!r.pass) sink.fail("x=" + render(c, x) + ": " + r.detail);
    }
}

void check_polarized_neg(const config_structure& c, const check_sink& sink) {
    for (event_set r : c.configs()) {
        auto es = functor_e_pointed(pointed_structure(c, r));
        event_set neg = es.pes.negative_set();
        for (std::size_t i = 0; i < es.pes.pes.size(); ++i) {
            if (!contains_event(neg, i)) continue;
            if (!subset_of(es.pes.pes.below(i), neg) || (es.pes.pes.conflicts(i) & neg) != 0) {
                sink.fail("negative primes do not form a configuration with referential " +
                          render(c, r));
                break;
            }
        }
    }
}

void check_polarity_switch(const config_structure& c, const check_sink& sink) {
    for (event_set r : c.configs()) {
        pointed_structure p(c, r);
        for (event_set x : c.configs()) {
            auto res = polarity_adequacy_check(p, x);
            if (!res.pass)
                sink.fail("referential " + render(c, r) + ", x=" + render(c, x) + ": " +
                          res.detail);
        }
    }
}

struct check_def {
    // Stream selection is part of the check's identity; the caller's kind
    // field is ignored on purpose.
    bool wants_stable_cs = false;
    bool wants_all_cs = false;
    bool wants_pes = false;
    void (*cs_fn)(const config_structure&, const check_sink&) = nullptr;
    void (*pes_fn)(const prime_event_structure&, const check_sink&) = nullptr;
};

const std::map<std::string, check_def>& check_table() {
    static const std::map<std::string, check_def> table = {
        {"monoid-action", {false, true, false, check_monoid_action, nullptr}},
        {"group-action", {false, true, false, check_group_action, nullptr}},
        {"conservative-extension", {false, true, false, check_conservative_extension, nullptr}},
        {"free-action", {false, true, false, check_free_action, nullptr}},
        {"c-of-e-stable", {false, false, true, nullptr, check_c_of_e_stable}},
        {"stable-orbits", {true, false, false, check_stable_orbits, nullptr}},
        {"winskel-roundtrip", {true, false, true, check_winskel_cs_side, check_winskel_pes_side}},
        {"unique-predecessor", {true, false, false, check_unique_predecessor, nullptr}},
        {"event-introduction", {true, false, false, check_event_introduction, nullptr}},
        {"introducer-unicity", {true, false, false, check_introducer_unicity, nullptr}},
        {"effect-cases", {true, false, false, check_effect_cases, nullptr}},
        {"adequacy", {true, false, false, check_adequacy, nullptr}},
        {"polarized-neg", {true, false, false, check_polarized_neg, nullptr}},
        {"polarity-switch", {true, false, false, check_polarity_switch, nullptr}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids = {
        "monoid-action",     "group-action",      "conservative-extension",
        "free-action",       "c-of-e-stable",     "stable-orbits",
        "winskel-roundtrip", "unique-predecessor", "event-introduction",
        "introducer-unicity", "effect-cases",     "adequacy",
        "polarized-neg",     "polarity-switch",
    };
    return ids;
}

namespace {

// Deterministic parallel run: workers claim fixed-size blocks of the code
// stream through an atomic cursor; per-block results are merged in block
// order afterwards, so the report is independent of scheduling.
struct block_result {
    std::uint64_t instances = 0;
    std::vector<theorem_failure> failures;
};

template <typename Item>
void run_blocks(const std::vector<Item>& items, std::size_t jobs,
                const std::function<void(const Item&, theorem_report&)>& one,
                theorem_report& report) {
    constexpr std::size_t block = 64;
    const std::size_t nblocks = (items.size() + block - 1) / block;
    std::vector<block_result> results(nblocks);
    std::atomic<std::size_t> cursor{0};

    auto worker = [&]() {
        for (;;) {
            std::size_t b = cursor.fetch_add(1);
            if (b >= nblocks) return;
            theorem_report local;
            for (std::size_t i = b * block; i < std::min(items.size(), (b + 1) * block); ++i)
                one(items[i], local);
            results[b].instances = local.instances;
            results[b].failures = std::move(local.failures);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& r : results) {
        report.instances += r.instances;
        for (auto& f : r.failures) report.failures.push_back(std::move(f));
    }
}

}  // namespace

theorem_report check_theorem(const std::string& id, const generator_spec& spec, std::size_t jobs) {
    auto it = check_table().find(id);
    if (it == check_table().end()) throw usage_error("unknown theorem id \"" + id + "\"");
    const check_def& def = it->second;

    theorem_report report;
    report.id = id;
    auto start = std::chrono::steady_clock::now();

    if (def.cs_fn) {
        generator_spec s = spec;
        s.kind = generator_kind::all_rooted;
        auto codes = structure_codes(s);
        event_table t = generator_table(s.universe_size);
        bool stable_only = def.wants_stable_cs;
        auto cs_fn = def.cs_fn;
        run_blocks<std::uint64_t>(
            codes, jobs,
            [&t, stable_only, cs_fn](const std::uint64_t& code, theorem_report& local) {
                config_structure c = structure_from_code(t, code);
                if (stable_only && !is_stable(c)) return;
                local.instances++;
                check_sink sink{&local, &c, nullptr};
                cs_fn(c, sink);
            },
            report);
    }
    if (def.pes_fn) {
        generator_spec s = spec;
        s.kind = generator_kind::all_pes;
        std::vector<prime_event_structure> all;
        for_each_pes(s, [&](const prime_event_structure& e) {
            all.push_back(e);
            return true;
        });
        auto pes_fn = def.pes_fn;
        run_blocks<prime_event_structure>(
            all, jobs,
            [pes_fn](const prime_event_structure& e, theorem_report& local) {
                local.instances++;
                check_sink sink{&local, nullptr, &e};
                pes_fn(e, sink);
            },
            report);
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace revconf
