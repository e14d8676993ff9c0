#include <doctest.h>

#include "fixtures.hpp"
#include "revconf/errors.hpp"
#include "revconf/structures.hpp"

using namespace revconf;
using fixtures::make_cs;
using fixtures::mask_of;

TEST_CASE("construction canonicalizes the family") {
    auto c = make_cs({"a", "b"}, {"ab", "a", "", "a", "b"});
    REQUIRE(c.size() == 4);
    CHECK(c.configs() == std::vector<event_set>{0b00, 0b01, 0b10, 0b11});
    CHECK(c.contains(0b01));
    CHECK_FALSE(c.contains(0b100));
    CHECK(c.index_of(0b10) == 2);
    CHECK_THROWS_AS((void)c.index_of(0b111), domain_error);
    CHECK(c.rooted());
}

TEST_CASE("validation reports a missing root") {
    auto c = make_cs({"a"}, {"a"});
    CHECK_FALSE(c.rooted());
    auto report = validate(c);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].find("empty configuration") != std::string::npos);
    CHECK(validate(fixtures::cube_top_removed()).ok());
}

TEST_CASE("pointed structures require a member referential") {
    auto c = fixtures::fixed_point_example();
    pointed_structure p(c, mask_of(c.table(), "b"));
    CHECK(p.referential() == 0b010);
    CHECK_FALSE(p.initial());
    CHECK(pointed_structure(c, 0).initial());
    CHECK_THROWS_AS(pointed_structure(c, mask_of(c.table(), "abc")), domain_error);
}

TEST_CASE("down and up sets") {
    auto c = fixtures::cube_top_removed();
    auto t = [&](const std::string& s) { return mask_of(c.table(), s); };
    CHECK(down_set(c, {t("ab")}) == std::vector<event_set>{t(""), t("a"), t("b"), t("ab")});
    CHECK(up_set(c, {t("b")}) == std::vector<event_set>{t("b"), t("ab"), t("bc")});
    CHECK(up_set(c, {t("a"), t("c")}) ==
          std::vector<event_set>{t("a"), t("c"), t("ab"), t("ac"), t("bc")});
    CHECK_THROWS_AS(down_set(c, {t("abc")}), domain_error);
}

TEST_CASE("least upper bounds with witnesses") {
    auto c0 = fixtures::cube_top_removed();
    auto t = [&](const std::string& s) { return mask_of(c0.table(), s); };

    auto r = lub(c0, {t("a"), t("b")});
    CHECK(r.value == t("ab"));
    CHECK(r.witnesses == std::vector<event_set>{t("ab")});

    // No bound at all: witnesses empty, value absent.
    r = lub(c0, {t("a"), t("b"), t("c")});
    CHECK_FALSE(r.value.has_value());
    CHECK(r.witnesses.empty());

    // Bounds exist but no least one.
    auto f = fixtures::bounded_not_compatible();
    auto ft = [&](const std::string& s) { return mask_of(f.table(), s); };
    r = lub(f, {ft("a"), ft("b")});
    CHECK_FALSE(r.value.has_value());
    CHECK(r.witnesses == std::vector<event_set>{ft("abc"), ft("abd")});

    // Singleton set: the element itself.
    r = lub(c0, {t("ac")});
    CHECK(r.value == t("ac"));
}

TEST_CASE("greatest lower bounds with witnesses") {
    auto c = fixtures::fixed_point_example();
    auto t = [&](const std::string& s) { return mask_of(c.table(), s); };
    auto r = glb(c, {t("ab"), t("bc")});
    CHECK(r.value == t("b"));
    CHECK(r.witnesses == std::vector<event_set>{t(""), t("b")});

    auto f = fixtures::bounded_not_compatible();
    auto ft = [&](const std::string& s) { return mask_of(f.table(), s); };
    r = glb(f, {ft("abc"), ft("abd")});
    CHECK_FALSE(r.value.has_value());
    CHECK(r.witnesses == std::vector<event_set>{ft(""), ft("a"), ft("b")});
}

TEST_CASE("compatibility, boundedness, orthogonality") {
    auto c2 = fixtures::cube_ab_removed();
    auto t = [&](const std::string& s) { return mask_of(c2.table(), s); };
    CHECK(compatible(c2, t("a"), t("b")));  // lub is {a,b,c}
    CHECK(bounded(c2, t("a"), t("b")));
    CHECK(orthogonal(c2, t("a"), t("b")));
    CHECK_FALSE(orthogonal(c2, t("a"), t("ac")));  // comparable

    auto f = fixtures::bounded_not_compatible();
    auto ft = [&](const std::string& s) { return mask_of(f.table(), s); };
    CHECK(bounded(f, ft("a"), ft("b")));
    CHECK_FALSE(compatible(f, ft("a"), ft("b")));
    CHECK_FALSE(orthogonal(f, ft("a"), ft("b")));

    auto c0 = fixtures::cube_top_removed();
    auto t0 = [&](const std::string& s) { return mask_of(c0.table(), s); };
    CHECK_FALSE(bounded(c0, t0("ab"), t0("bc")));
    CHECK_FALSE(compatible(c0, t0("ab"), t0("bc")));

    CHECK_THROWS_AS((void)orthogonal(c0, t0("abc"), t0("abc")), domain_error);
    CHECK_THROWS_AS((void)compatible(c0, t0("abc"), t0("a")), domain_error);
}

TEST_CASE("event polarity against the referential") {
    auto c = fixtures::fixed_point_example();
    pointed_structure p(c, mask_of(c.table(), "b"));
    CHECK(polarity_of_event(p, "b") == polarity::negative);
    CHECK(polarity_of_event(p, "a") == polarity::positive);
    CHECK_THROWS_AS((void)polarity_of_event(p, "zz"), domain_error);
}

TEST_CASE("configuration classification by referential overlap") {
    auto c = fixtures::fixed_point_example();
    auto t = [&](const std::string& s) { return mask_of(c.table(), s); };
    pointed_structure p(c, t("b"));
    CHECK(classify_configuration(p, t("")) == config_class::forward);
    CHECK(classify_configuration(p, t("a")) == config_class::forward);
    CHECK(classify_configuration(p, t("b")) == config_class::backward);
    CHECK(classify_configuration(p, t("ab")) == config_class::mixed);
    CHECK(classify_configuration(p, t("bc")) == config_class::mixed);
    CHECK_THROWS_AS((void)classify_configuration(p, t("abc")), domain_error);
}

TEST_CASE("family equivalence up to event bijection") {
    auto left = make_cs({"a", "b"}, {"", "a"});
    auto right = make_cs({"a", "b"}, {"", "b"});
    auto phi = equivalent(left, right);
    REQUIRE(phi.has_value());
    CHECK((*phi)[0] == 1);
    CHECK((*phi)[1] == 0);

    CHECK_FALSE(equivalent(left, make_cs({"a", "b"}, {"", "ab"})).has_value());
    CHECK_FALSE(equivalent(left, make_cs({"a"}, {"", "a"})).has_value());

    // Identity on a rigid family.
    auto c = fixtures::sigma_example();
    auto id = equivalent(c, c);
    REQUIRE(id.has_value());

    std::vector<std::string> big;
    for (int i = 0; i < 11; ++i) big.push_back("e" + std::to_string(i));
    config_structure wide(event_table(big), {0});
    CHECK_THROWS_AS((void)equivalent(wide, wide), resource_error);
}

TEST_CASE("pointed equivalence carries the referential across") {
    auto c = fixtures::fork();
    pointed_structure pa(c, mask_of(c.table(), "a"));
    pointed_structure pb(c, mask_of(c.table(), "b"));
    auto phi = equivalent(pa, pb);
    REQUIRE(phi.has_value());
    CHECK((*phi)[0] == 1);

    CHECK_FALSE(equivalent(pa, pointed_structure(c, 0)).has_value());
    CHECK(equivalent(pa, pa).has_value());
}
