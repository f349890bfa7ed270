#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mcat/category.hpp"
#include "mcat/fixtures.hpp"

using namespace mcat;

TEST_CASE("the stock categories pass the axiom check") {
    CHECK_NOTHROW(check_category(terminal_category()));
    CHECK_NOTHROW(check_category(walking_arrow()));
    CHECK_NOTHROW(check_category(z2_category()));
    CHECK_NOTHROW(check_category(boolean_rig().cat));
}

TEST_CASE("corrupted tables are rejected") {
    FiniteCategory c = walking_arrow();
    const ArrId f = c.arrow_index("f");
    const ArrId ida = c.identities[c.object_index("a")];

    SUBCASE("identity law broken") {
        c.comp[f][ida] = ida;  // f after id_a must be f
        CHECK_THROWS_AS(check_category(c), InputError);
    }
    SUBCASE("composable pair left empty") {
        c.comp[f][ida] = kNoArr;
        CHECK_THROWS_AS(check_category(c), InputError);
    }
    SUBCASE("endpoint mismatch in a cell") {
        c.comp[ida][f] = f;  // cod f = b, dom id_a = a: not composable
        CHECK_THROWS_AS(check_category(c), InputError);
    }
}

TEST_CASE("hom and composition bookkeeping") {
    const FiniteCategory w = walking_arrow();
    const ObjId a = w.object_index("a");
    const ObjId b = w.object_index("b");
    CHECK(w.hom(a, b) == std::vector<ArrId>{w.arrow_index("f")});
    CHECK(w.hom(b, a).empty());
    CHECK(w.compose(w.arrow_index("f"), w.identities[a]) == w.arrow_index("f"));

    const FiniteCategory z = z2_category();
    CHECK(z.object_count() == 1);
    CHECK(z.arrows.size() == 2);
    // the non-identity squares to the identity
    ArrId s = kNoArr;
    for (ArrId i = 0; i < z.arrows.size(); ++i)
        if (i != z.identities[0]) s = i;
    CHECK(z.compose(s, s) == z.identities[0]);
}

TEST_CASE("monoid tables convert to one-object categories") {
    const MonoidTable m = z2_monoid();
    CHECK_NOTHROW(check_monoid(m));
    CHECK(monoid_commutative(m));
    const FiniteCategory c = monoid_as_category(m);
    CHECK_NOTHROW(check_category(c));
    CHECK(c.object_count() == 1);
    CHECK(c.arrows.size() == 2);

    MonoidTable bad = m;
    bad.table[1][1] = 1;  // s*s = s breaks inverse bookkeeping? no: breaks nothing
    CHECK_NOTHROW(check_monoid(bad));  // still a monoid (the idempotent one)
    bad.table[0][1] = 0;  // e*s = e breaks the unit law
    CHECK_THROWS_AS(check_monoid(bad), InputError);
}

TEST_CASE("enrichment laws") {
    const PreadditiveCategory p = boolean_rig();
    CHECK_NOTHROW(check_enrichment(p.cat, p.enr));

    SUBCASE("missing sum cell") {
        CMonEnrichment e = p.enr;
        e.add.clear();
        CHECK_THROWS_AS(check_enrichment(p.cat, e), InputError);
    }
    SUBCASE("zero not absorbing") {
        // make 0 + 0 = 1: breaks the unit law of the hom monoid
        CMonEnrichment e = p.enr;
        const ArrId zero = p.enr.zero[0][0];
        const ArrId one = zero == 0 ? 1 : 0;
        e.add[{zero, zero}] = one;
        CHECK_THROWS_AS(check_enrichment(p.cat, e), InputError);
    }
}

TEST_CASE("monoidal tables") {
    const StrictMonoidalData d = join_semilattice();
    CHECK_NOTHROW(check_monoidal(d));
    const ObjId a = d.cat.object_index("a");
    const ObjId b = d.cat.object_index("b");
    CHECK(d.tobj(a, a) == a);
    CHECK(d.tobj(a, b) == b);
    CHECK(d.tobj_family({a, b, a}) == b);
    CHECK(d.tobj_family({}) == d.unit);

    StrictMonoidalData bad = d;
    bad.tensor_obj[a][a] = b;  // unit law of the tensor broken
    CHECK_THROWS_AS(check_monoidal(bad), InputError);
}

TEST_CASE("chosen products verify their universal property") {
    // two objects t, x with one arrow u : x -> t; meets exist
    FiniteCategory c;
    c.name = "meet-pair";
    c.objects = {"t", "x"};
    c.arrows = {CatArrow{"id_t", 0, 0}, CatArrow{"id_x", 1, 1}, CatArrow{"u", 1, 0}};
    c.identities = {0, 1};
    c.comp = std::vector<std::vector<ArrId>>(3, std::vector<ArrId>(3, kNoArr));
    c.comp[0][0] = 0;
    c.comp[1][1] = 1;
    c.comp[0][2] = 2;  // id_t after u
    c.comp[2][1] = 2;  // u after id_x
    CHECK_NOTHROW(check_category(c));

    ChosenProducts p;
    p.terminal = 0;
    p.pairs = {{{0, 0, 0}, {1, 2, 1}}, {{1, 1, 2}, {1, 1, 1}}};
    CHECK_NOTHROW(check_products(c, p));

    ChosenProducts bad = p;
    bad.pairs[1][1] = {0, 0, 0};  // x times x is not t
    CHECK_THROWS_AS(check_products(c, bad), InputError);
}

TEST_CASE("product category is componentwise") {
    const FiniteCategory w = walking_arrow();
    const FiniteCategory p = product_category(w, w);
    CHECK_NOTHROW(check_category(p));
    CHECK(p.object_count() == 4);
    CHECK(p.arrows.size() == 9);
    // (f,f) composed after (id_a,id_a) is (f,f)
    const ArrId f = w.arrow_index("f");
    const ArrId ida = w.identities[w.object_index("a")];
    const ArrId ff = static_cast<ArrId>(f * w.arrows.size() + f);
    const ArrId idaa = static_cast<ArrId>(ida * w.arrows.size() + ida);
    CHECK(p.compose(ff, idaa) == ff);
}
