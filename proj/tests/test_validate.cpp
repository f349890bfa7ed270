#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "mcat/constructions.hpp"
#include "mcat/fixtures.hpp"
#include "mcat/validate.hpp"

using namespace mcat;

namespace {

std::vector<std::string> law_names(const ValidationReport& r) {
    std::vector<std::string> out;
    for (const auto& l : r.laws) out.push_back(l.law);
    return out;
}

// the stock fixtures carry genuine structure, so every suite must pass
void expect_clean(const std::string& name, bool with_cartesian) {
    const Budget b;
    const BackendPtr m = fixture(name, b);
    const ValidationReport mc = validate_multicat(*m, b);
    INFO(name);
    CHECK(mc.ok());
    CHECK(validate_symmetric(*m, b).ok());
    if (with_cartesian) {
        REQUIRE(m->cartesian());
        CHECK(validate_cartesian(*m, b).ok());
    }
}

}  // namespace

TEST_CASE("law names are stable") {
    const Budget b;
    const BackendPtr one = fixture("One", b);
    CHECK(law_names(validate_multicat(*one, b)) ==
          std::vector<std::string>{"hom-deterministic", "hom-distinct", "identity-signature",
                                   "compose-signature", "unit-left", "unit-right", "assoc"});
    CHECK(law_names(validate_symmetric(*one, b)) ==
          std::vector<std::string>{"sym-identity", "sym-compose", "sym-compat-one",
                                   "sym-compat-two"});
    const BackendPtr fs = fixture("FS2", b);
    CHECK(law_names(validate_cartesian(*fs, b)) ==
          std::vector<std::string>{"cart-identity", "cart-compose", "cart-compat-one",
                                   "cart-compat-two", "cart-factorization"});
}

TEST_CASE("stock fixtures validate clean") {
    expect_clean("One", false);
    expect_clean("W", false);
    expect_clean("Z2seq", false);
    expect_clean("FS2t", false);
    expect_clean("Wu", false);
    expect_clean("Z2", false);
    expect_clean("Wj", false);
    expect_clean("T", true);
    expect_clean("FS2", true);
    expect_clean("Bool", true);
    expect_clean("Nat", true);
    expect_clean("FreeW", true);
}

TEST_CASE("the empty backend validates vacuously") {
    const Budget b;
    const BackendPtr i = fixture("I", b);
    CHECK(i->object_count() == 0);
    const ValidationReport r = validate_multicat(*i, b);
    CHECK(r.ok());
    for (const auto& l : r.laws) CHECK(l.outcome == Outcome::pass);
    CHECK(validate_symmetric(*i, b).ok());
}

TEST_CASE("cartesian validation needs a cartesian backend") {
    const Budget b;
    CHECK_THROWS_AS(validate_cartesian(*fixture("W", b), b), UnsupportedAction);
}

TEST_CASE("a broken composition cell yields a minimal witness that replays") {
    const Budget b;
    const BackendPtr z = fixture("Z2seq", b);
    const TableData clean = snapshot_table(*z, 3, 10000);

    TableData t = clean;
    bool corrupted = false;
    for (auto& [key, val] : t.comp_cells) {
        for (const auto& a : t.arrows) {
            if (a.name == val) continue;
            for (const auto& o : t.arrows)
                if (o.name == val && a.dom == o.dom && a.cod == o.cod) {
                    val = a.name;
                    corrupted = true;
                    break;
                }
            if (corrupted) break;
        }
        if (corrupted) break;
    }
    REQUIRE(corrupted);

    const BackendPtr bad = table_mcat(t);
    const ValidationReport r = validate_multicat(*bad, b);
    CHECK_FALSE(r.ok());

    const Counterexample* w = r.first_witness();
    REQUIRE(w != nullptr);
    CHECK_FALSE(w->law.empty());
    // the witness names one of the laws of this suite
    bool named = false;
    for (const auto& l : r.laws)
        if (l.law == w->law && l.outcome == Outcome::counterexample) named = true;
    CHECK(named);
    CHECK(replay(*bad, *w, b));
    CHECK_FALSE(replay(*table_mcat(clean), *w, b));

    // symmetry stays intact under this corruption or fails on its own; either
    // way the symmetric suite must not crash
    CHECK_NOTHROW(validate_symmetric(*bad, b));
}

TEST_CASE("a broken symmetry cell fails the symmetric suite") {
    const Budget b;
    const BackendPtr z = fixture("Z2seq", b);
    TableData t = snapshot_table(*z, 3, 10000);

    bool corrupted = false;
    for (auto& [key, val] : t.sym_cells) {
        auto sig_of = [&](const std::string& name) {
            for (const auto& a : t.arrows)
                if (a.name == name) return std::pair{a.dom, a.cod};
            return std::pair{std::vector<std::string>{}, std::string{}};
        };
        const auto want = sig_of(val);
        for (const auto& a : t.arrows)
            if (a.name != val && a.dom == want.first && a.cod == want.second) {
                val = a.name;
                corrupted = true;
                break;
            }
        if (corrupted) break;
    }
    REQUIRE(corrupted);

    const BackendPtr bad = table_mcat(t);
    const ValidationReport r = validate_symmetric(*bad, b);
    CHECK_FALSE(r.ok());
    const Counterexample* w = r.first_witness();
    REQUIRE(w != nullptr);
    CHECK(w->law.rfind("sym-", 0) == 0);
    CHECK(replay(*bad, *w, b));
}

TEST_CASE("truncated enumerations are flagged, not failed") {
    Budget tight;
    tight.max_enum = 20;
    const BackendPtr nat = fixture("Nat", tight);
    const ValidationReport r = validate_multicat(*nat, tight);
    CHECK(r.ok());
    CHECK(r.any_truncated());
}

TEST_CASE("a zero arity budget exhausts arrow-level laws") {
    Budget zero;
    zero.max_arity = 0;
    const BackendPtr w = fixture("W", zero);
    const ValidationReport r = validate_multicat(*w, zero);
    CHECK_FALSE(r.ok());
    bool exhausted = false;
    for (const auto& l : r.laws)
        if (l.outcome == Outcome::budget_exhausted) exhausted = true;
    CHECK(exhausted);
    CHECK(r.first_witness() == nullptr);
}

TEST_CASE("reports carry their provenance") {
    const Budget b;
    const BackendPtr w = fixture("W", b);
    const ValidationReport r = validate_multicat(*w, b);
    CHECK(r.backend == w->describe());
    CHECK(r.budget.max_arity == b.max_arity);
    for (const auto& l : r.laws) CHECK(l.instances > 0);
}
