#include <doctest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "revconf/errors.hpp"
#include "revconf/oracle.hpp"
#include "revconf/residuation.hpp"
#include "revconf/switching.hpp"

using namespace revconf;
using fixtures::make_cs;
using fixtures::mask_of;

namespace {

prime_event_structure one_cause_one_conflict() {
    raw_event_structure raw;
    raw.table = event_table({"a", "b", "c"});
    raw.causes = {0, 0, single_event(1)};                              // b < c
    raw.conflict = {single_event(2), 0, single_event(0)};              // a # c
    auto v = validate_pes(raw);
    REQUIRE(v.ok());
    return *v.pes;
}

}  // namespace

TEST_CASE("the residuation map matches primes by derivative") {
    auto c = fixtures::sigma_example();
    auto t = [&](const std::string& s) { return mask_of(c.table(), s); };
    auto m = make_residuation_map(c, t("ac"));
    CHECK(m.source == c);
    CHECK(m.pivot == t("ac"));
    CHECK(m.target == symmetric_residual(c, t("ac")));
    std::vector<std::pair<event_set, event_set>> expected = {
        {t("a"), t("ac")}, {t("b"), t("bc")}, {t("ac"), t("c")}, {t("bd"), t("abcd")}};
    CHECK(m.mapping == expected);
    CHECK(m.apply(t("bd")) == t("abcd"));
    CHECK_THROWS_AS((void)m.apply(t("ab")), domain_error);  // a configuration, not a prime
}

TEST_CASE("residuating by the empty configuration maps every prime to itself") {
    auto c = fixtures::sigma_example();
    auto m = make_residuation_map(c, 0);
    for (const auto& [p, q] : m.mapping) CHECK(p == q);
}

TEST_CASE("the residuation map composes to the identity across the pivot") {
    for (const auto& c : {fixtures::sigma_example(), fixtures::fixed_point_example(),
                          fixtures::cause_conflict_family()}) {
        for (event_set x : c.configs()) {
            auto fwd = make_residuation_map(c, x);
            auto bwd = make_residuation_map(fwd.target, x);
            for (const auto& [p, q] : fwd.mapping) CHECK(bwd.apply(q) == p);
        }
    }
}

TEST_CASE("residuation map preconditions") {
    CHECK_THROWS_WITH_AS((void)make_residuation_map(fixtures::cube_top_removed(), 0),
                         "source structure is not stable", domain_error);
    auto c = fixtures::sigma_example();
    CHECK_THROWS_AS((void)make_residuation_map(c, mask_of(c.table(), "cd")), domain_error);
}

TEST_CASE("effect case names") {
    CHECK(std::string(effect_case_name(effect_case::preserve_ort)) == "PreserveOrt");
    CHECK(std::string(effect_case_name(effect_case::flip_cause)) == "FlipCause");
    CHECK(std::string(effect_case_name(effect_case::preserve_cause)) == "PreserveCause");
    CHECK(std::string(effect_case_name(effect_case::cause_to_conflict)) == "CauseToConflict");
    CHECK(std::string(effect_case_name(effect_case::conflict_to_cause)) == "ConflictToCause");
    CHECK(std::string(effect_case_name(effect_case::preserve_conflict)) == "PreserveConflict");
}

TEST_CASE("each effect case fires on its canonical instance") {
    auto chain = fixtures::chain2();
    auto tc = [&](const std::string& s) { return mask_of(chain.table(), s); };
    auto ccf = fixtures::cause_conflict_family();
    auto tf = [&](const std::string& s) { return mask_of(ccf.table(), s); };
    auto sigma = fixtures::sigma_example();
    auto ts = [&](const std::string& s) { return mask_of(sigma.table(), s); };
    auto fork = fixtures::fork();
    auto tk = [&](const std::string& s) { return mask_of(fork.table(), s); };

    auto r1 = classify_effect(ccf, 0, tf("a"), tf("b"));
    CHECK(r1.tag == effect_case::preserve_ort);
    CHECK(r1.p == tf("a"));
    CHECK(r1.q == tf("b"));
    CHECK(r1.conclusion_holds);

    auto r2 = classify_effect(chain, tc("ab"), tc("a"), tc("ab"));
    CHECK(r2.tag == effect_case::flip_cause);
    CHECK(r2.p == tc("a"));
    CHECK(r2.q == tc("ab"));
    CHECK(r2.conclusion_holds);

    auto r3 = classify_effect(chain, 0, tc("a"), tc("ab"));
    CHECK(r3.tag == effect_case::preserve_cause);
    CHECK(r3.conclusion_holds);

    auto r4 = classify_effect(chain, tc("a"), tc("a"), tc("ab"));
    CHECK(r4.tag == effect_case::cause_to_conflict);
    CHECK(r4.conclusion_holds);

    auto r5 = classify_effect(sigma, ts("ac"), ts("a"), ts("bd"));
    CHECK(r5.tag == effect_case::conflict_to_cause);
    CHECK(r5.p == ts("a"));
    CHECK(r5.q == ts("bd"));
    CHECK(r5.conclusion_holds);

    auto r6 = classify_effect(fork, 0, tk("a"), tk("b"));
    CHECK(r6.tag == effect_case::preserve_conflict);
    CHECK(r6.conclusion_holds);
}

TEST_CASE("the applicable premise orients the pair itself") {
    auto chain = fixtures::chain2();
    auto t = [&](const std::string& s) { return mask_of(chain.table(), s); };
    auto r = classify_effect(chain, t("a"), t("ab"), t("a"));  // arguments reversed
    CHECK(r.tag == effect_case::cause_to_conflict);
    CHECK(r.p == t("a"));
    CHECK(r.q == t("ab"));
}

TEST_CASE("effect classification rejects bad prime pairs") {
    auto sigma = fixtures::sigma_example();
    auto t = [&](const std::string& s) { return mask_of(sigma.table(), s); };
    auto m = make_residuation_map(sigma, 0);
    CHECK_THROWS_AS((void)classify_effect(m, t("a"), t("a")), domain_error);
    CHECK_THROWS_AS((void)classify_effect(m, t("ab"), t("b")), domain_error);
}

TEST_CASE("every conclusion holds across a full fixture sweep") {
    for (const auto& c : {fixtures::sigma_example(), fixtures::fixed_point_example(),
                          fixtures::cause_conflict_family()}) {
        for (event_set x : c.configs()) {
            auto m = make_residuation_map(c, x);
            for (std::size_t i = 0; i < m.mapping.size(); ++i) {
                for (std::size_t j = i + 1; j < m.mapping.size(); ++j) {
                    auto r = classify_effect(m, m.mapping[i].first, m.mapping[j].first);
                    CHECK(r.conclusion_holds);
                }
            }
        }
    }
}

TEST_CASE("switching along the empty configuration is the identity") {
    auto e = one_cause_one_conflict();
    auto v = validate_pes(switch_pes(e, 0));
    REQUIRE(v.ok());
    CHECK(*v.pes == e);
}

TEST_CASE("switching along a configuration rewires its boundary") {
    auto e = one_cause_one_conflict();
    auto idx = [&](const char* n) { return e.table().index_checked(n); };

    // Along {b}: the cause b<c leaves the switched set, so it turns into a
    // conflict; a#c is untouched. No causality remains.
    auto s1 = switch_pes(e, single_event(idx("b")));
    CHECK(s1.causes == std::vector<event_set>(3, 0));
    auto v1 = validate_pes(s1);
    REQUIRE(v1.ok());
    CHECK(v1.pes->in_conflict(idx("a"), idx("c")));
    CHECK(v1.pes->in_conflict(idx("b"), idx("c")));
    CHECK_FALSE(v1.pes->in_conflict(idx("a"), idx("b")));

    // Along {b,c}: b<c reverses, and the boundary conflict a#c becomes the
    // causality c<a. Nothing is left in conflict.
    auto s2 = switch_pes(e, single_event(idx("b")) | single_event(idx("c")));
    auto v2 = validate_pes(s2);
    REQUIRE(v2.ok());
    CHECK(v2.pes->leq(idx("c"), idx("b")));
    CHECK(v2.pes->leq(idx("c"), idx("a")));
    CHECK_FALSE(v2.pes->leq(idx("b"), idx("c")));
    CHECK(v2.pes->conflicts(idx("a")) == 0);
    CHECK(v2.pes->conflicts(idx("b")) == 0);
    CHECK(v2.pes->conflicts(idx("c")) == 0);
}

TEST_CASE("switching back along the same set restores the structure") {
    auto e = one_cause_one_conflict();
    event_set b = single_event(e.table().index_checked("b"));
    auto once = validate_pes(switch_pes(e, b));
    REQUIRE(once.ok());
    auto twice = validate_pes(switch_pes(*once.pes, b));
    REQUIRE(twice.ok());
    CHECK(*twice.pes == e);
}

TEST_CASE("switching requires a configuration of the structure") {
    auto e = one_cause_one_conflict();
    event_set c_alone = single_event(e.table().index_checked("c"));
    CHECK_THROWS_WITH_AS((void)switch_pes(e, c_alone),
                         "{c} is not a configuration of the event structure", domain_error);
    auto pol = functor_e_pointed(pointed_structure(fixtures::fixed_point_example(), 0));
    CHECK_THROWS_AS((void)switch_polarized(pol.pes, single_event(0) | single_event(2)),
                    domain_error);
}

TEST_CASE("switched structures always validate") {
    // The switch clauses could in principle break heredity or antisymmetry;
    // sweeping every event structure with up to three events along every
    // configuration shows they never do.
    for (std::size_t n = 1; n <= 3; ++n) {
        generator_spec spec;
        spec.universe_size = n;
        std::size_t checked = 0;
        for_each_pes(spec, [&](const prime_event_structure& e) {
            for (event_set x : configurations(e)) {
                auto v = validate_pes(switch_pes(e, x));
                ++checked;
                if (!v.ok()) {
                    CHECK(v.ok());
                    return false;
                }
            }
            return true;
        });
        CHECK(checked > 0);
    }
}

TEST_CASE("polarized switching flips the signs of the switched set") {
    auto fp = fixtures::fixed_point_example();
    auto out = functor_e_pointed(pointed_structure(fp, 0));
    CHECK(out.pes.sign == std::vector<int>{1, 1, 1});

    event_set on = single_event(out.pes.pes.table().index_checked("{b}"));
    auto once = validate_polarized(switch_polarized(out.pes, on));
    REQUIRE(once.ok());
    CHECK(once.pes->sign == std::vector<int>{1, -1, 1});
    CHECK(once.pes->negative_set() == on);

    auto twice = validate_polarized(switch_polarized(*once.pes, on));
    REQUIRE(twice.ok());
    CHECK(*twice.pes == out.pes);
}

TEST_CASE("adequacy: switching the event structure tracks residuating the family") {
    for (const auto& c : {fixtures::sigma_example(), fixtures::fixed_point_example(),
                          fixtures::cause_conflict_family(), fixtures::fork(),
                          fixtures::chain2()}) {
        for (event_set x : c.configs()) {
            auto r = adequacy_check(c, x);
            INFO(r.detail);
            CHECK(r.pass);
        }
    }
    CHECK_THROWS_AS((void)adequacy_check(fixtures::cube_top_removed(), 0), domain_error);
}

TEST_CASE("polarity adequacy over pointed fixtures") {
    auto fp = fixtures::fixed_point_example();
    auto sigma = fixtures::sigma_example();
    std::vector<pointed_structure> pointed = {
        pointed_structure(fp, 0), pointed_structure(fp, mask_of(fp.table(), "b")),
        pointed_structure(sigma, mask_of(sigma.table(), "ac")),
        pointed_structure(fixtures::chain2(), 0)};
    for (const auto& p : pointed) {
        for (event_set x : p.base().configs()) {
            auto r = polarity_adequacy_check(p, x);
            INFO(r.detail);
            CHECK(r.pass);
        }
    }
}
