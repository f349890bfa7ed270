#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "mcat/backend.hpp"
#include "mcat/constructions.hpp"
#include "mcat/fixtures.hpp"

using namespace mcat;

namespace {

// Reference model for the finite-set backend, kept deliberately naive: a
// function is a table of values indexed by the list of argument tuples in
// lexicographic order, and everything is computed by explicit evaluation.

std::vector<std::vector<std::uint64_t>> all_tuples(const std::vector<ObjId>& sizes) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    struct Rec {
        const std::vector<ObjId>& sizes;
        std::vector<std::vector<std::uint64_t>>& out;
        std::vector<std::uint64_t>& cur;
        void go(std::size_t i) {
            if (i == sizes.size()) {
                out.push_back(cur);
                return;
            }
            for (std::uint64_t v = 0; v < sizes[i]; ++v) {
                cur.push_back(v);
                go(i + 1);
                cur.pop_back();
            }
        }
    } rec{sizes, out, cur};
    rec.go(0);
    return out;
}

std::size_t tuple_index(const std::vector<ObjId>& sizes, const std::vector<std::uint64_t>& xs) {
    const auto tuples = all_tuples(sizes);
    const auto it = std::find(tuples.begin(), tuples.end(), xs);
    REQUIRE(it != tuples.end());
    return static_cast<std::size_t>(it - tuples.begin());
}

// every value table over the argument tuples, ascending lexicographically
std::vector<std::vector<std::uint64_t>> all_tables(const std::vector<ObjId>& dom, ObjId cod) {
    const std::size_t len = all_tuples(dom).size();
    std::vector<std::vector<std::uint64_t>> out;
    if (len == 0) {
        out.push_back({});
        return out;
    }
    if (cod == 0) return out;
    std::vector<std::uint64_t> cur;
    struct Rec {
        std::size_t len;
        ObjId cod;
        std::vector<std::vector<std::uint64_t>>& out;
        std::vector<std::uint64_t>& cur;
        void go() {
            if (cur.size() == len) {
                out.push_back(cur);
                return;
            }
            for (std::uint64_t v = 0; v < cod; ++v) {
                cur.push_back(v);
                go();
                cur.pop_back();
            }
        }
    } rec{len, cod, out, cur};
    rec.go();
    return out;
}

std::uint64_t eval_table(const Arrow& f, const std::vector<std::uint64_t>& xs) {
    return f.code[tuple_index(f.sig.domain, xs)];
}

// pointwise composite table, arguments split per factor domain
std::vector<std::uint64_t> oracle_compose(const Arrow& f, const std::vector<Arrow>& gs) {
    std::vector<ObjId> dom;
    for (const Arrow& g : gs) dom.insert(dom.end(), g.sig.domain.begin(), g.sig.domain.end());
    std::vector<std::uint64_t> table;
    for (const auto& xs : all_tuples(dom)) {
        std::vector<std::uint64_t> ys;
        std::size_t off = 0;
        for (const Arrow& g : gs) {
            const std::size_t k = g.sig.domain.size();
            ys.push_back(eval_table(g, {xs.begin() + static_cast<std::ptrdiff_t>(off),
                                        xs.begin() + static_cast<std::ptrdiff_t>(off + k)}));
            off += k;
        }
        table.push_back(eval_table(f, ys));
    }
    return table;
}

// relabelled table: the permuted arrow reads argument i from target slot map[i]
std::vector<std::uint64_t> oracle_perm(const Arrow& f, const FamilyMap& s) {
    std::vector<std::uint64_t> table;
    for (const auto& ys : all_tuples(s.target)) {
        std::vector<std::uint64_t> xs(f.sig.domain.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = ys[s.map[i]];
        table.push_back(eval_table(f, xs));
    }
    return table;
}

FamilyMap swap_map(ObjId a, ObjId b) {
    return FamilyMap{{1, 0}, {a, b}, {b, a}};
}

std::vector<Arrow> hom_vec(const Backend& m, Signature sig, std::uint64_t cap = 10000) {
    return m.hom(sig, cap).arrows;
}

}  // namespace

TEST_CASE("finite set homs are exactly the value tables") {
    const BackendPtr fs = fixture("FS2", Budget{});
    REQUIRE(fs->object_count() == 3);
    for (ObjId c = 0; c < 3; ++c) {
        std::vector<std::vector<ObjId>> doms = {{}};
        for (ObjId x = 0; x < 3; ++x) {
            doms.push_back({x});
            for (ObjId y = 0; y < 3; ++y) doms.push_back({x, y});
        }
        for (const auto& d : doms) {
            const Signature sig{d, c};
            const auto got = hom_vec(*fs, sig);
            const auto want = all_tables(d, c);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].sig == sig);
                CHECK(got[i].code == want[i]);
            }
        }
    }
    CHECK(hom_vec(*fs, Signature{{2, 2}, 2}).size() == 16);
    CHECK(hom_vec(*fs, Signature{{0}, 2}).size() == 1);   // empty product: one function
    CHECK(hom_vec(*fs, Signature{{2}, 0}).empty());       // nothing maps into the empty set
    CHECK(hom_vec(*fs, Signature{{}, 2}).size() == 2);    // constants
    CHECK(fs->identity(2).code == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("finite set composition is pointwise evaluation") {
    const BackendPtr fs = fixture("FS2", Budget{});
    const auto unary = hom_vec(*fs, Signature{{2}, 2});
    const auto binary = hom_vec(*fs, Signature{{2, 2}, 2});
    for (const Arrow& f : unary)
        for (const Arrow& g : binary) {
            const Arrow got = fs->compose(f, std::vector<Arrow>{g});
            CHECK(got.sig == g.sig);
            CHECK(got.code == oracle_compose(f, {g}));
        }
    // two factors of different arities
    const auto mixed = hom_vec(*fs, Signature{{1, 2}, 2});
    const auto squash = hom_vec(*fs, Signature{{2}, 1});
    REQUIRE(squash.size() == 1);
    for (const Arrow& f : mixed)
        for (const Arrow& g : binary) {
            const Arrow got = fs->compose(f, std::vector<Arrow>{squash[0], g});
            CHECK(got.sig.domain == std::vector<ObjId>{2, 2, 2});
            CHECK(got.code == oracle_compose(f, {squash[0], g}));
        }
}

TEST_CASE("finite set symmetry relabels argument slots") {
    const BackendPtr fs = fixture("FS2", Budget{});
    const FamilyMap s = swap_map(1, 2);
    for (const Arrow& f : hom_vec(*fs, Signature{{1, 2}, 2})) {
        const Arrow got = fs->sym_act(s, f);
        CHECK(got.sig.domain == std::vector<ObjId>{2, 1});
        CHECK(got.code == oracle_perm(f, s));
        // acting back restores the original arrow
        CHECK(fs->sym_act(swap_map(2, 1), got) == f);
    }
}

TEST_CASE("finite set cartesian structure: duplication, deletion, products") {
    const BackendPtr fs = fixture("FS2", Budget{});
    CHECK(fs->cartesian());
    for (const Arrow& f : hom_vec(*fs, Signature{{2, 2}, 2})) {
        const Arrow d = fs->contract(f, 0);
        CHECK(d.sig.domain == std::vector<ObjId>{2});
        for (std::uint64_t x = 0; x < 2; ++x) CHECK(eval_table(d, {x}) == eval_table(f, {x, x}));
    }
    for (const Arrow& f : hom_vec(*fs, Signature{{2}, 2})) {
        const Arrow w = fs->weaken(f, 0, 2);
        CHECK(w.sig.domain == std::vector<ObjId>{2, 2});
        for (std::uint64_t x = 0; x < 2; ++x)
            for (std::uint64_t y = 0; y < 2; ++y) CHECK(eval_table(w, {y, x}) == eval_table(f, {x}));
    }
    const auto u = fs->universal_arrow({1, 2});
    REQUIRE(u.has_value());
    CHECK(u->sig.codomain == 2);
    CHECK(u->code == std::vector<std::uint64_t>{0, 1});
    CHECK_FALSE(fs->universal_arrow({2, 2}).has_value());  // four points exceed the cap
    const auto e = fs->universal_arrow({});
    REQUIRE(e.has_value());
    CHECK(e->sig.codomain == 1);

    const BackendPtr tight = fixture("FS2t", Budget{});
    CHECK_FALSE(tight->cartesian());
    const Arrow f = hom_vec(*tight, Signature{{2, 2}, 2}).front();
    CHECK_THROWS_AS(tight->contract(f, 0), UnsupportedAction);
    CHECK_THROWS_AS(tight->weaken(f, 0, 2), UnsupportedAction);
}

TEST_CASE("natural tuples: grading, scaling composition, symmetry") {
    const BackendPtr nat = fixture("Nat", Budget{});
    REQUIRE(nat->object_count() == 1);
    const Signature bin{{0, 0}, 0};

    const auto first = nat->hom(bin, 6).arrows;
    const std::vector<std::vector<std::uint64_t>> want = {{0, 0}, {0, 1}, {1, 0},
                                                          {0, 2}, {1, 1}, {2, 0}};
    REQUIRE(first.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(first[i].code == want[i]);

    const HomSet small = nat->hom(Signature{{0}, 0}, 5);
    CHECK(small.arrows.size() == 5);
    CHECK(small.truncated);
    const HomSet empty_dom = nat->hom(Signature{{}, 0}, 5);
    CHECK(empty_dom.arrows.size() == 1);
    CHECK_FALSE(empty_dom.truncated);

    const auto tup = [&](std::vector<std::uint64_t> code) {
        return Arrow{Signature{std::vector<ObjId>(code.size(), 0), 0}, std::move(code)};
    };
    CHECK(nat->identity(0).code == std::vector<std::uint64_t>{1});
    CHECK(nat->compose(tup({2, 3}), std::vector<Arrow>{tup({1}), tup({4})}).code ==
          std::vector<std::uint64_t>{2, 12});
    CHECK(nat->compose(tup({2}), std::vector<Arrow>{tup({1, 4})}).code ==
          std::vector<std::uint64_t>{2, 8});
    CHECK(nat->sym_act(swap_map(0, 0), tup({2, 3})).code == std::vector<std::uint64_t>{3, 2});
    CHECK(nat->contract(tup({2, 3}), 0).code == std::vector<std::uint64_t>{5});
    CHECK(nat->weaken(tup({7}), 0, 0).code == std::vector<std::uint64_t>{0, 7});
    CHECK(nat->cartesian());
}

TEST_CASE("sequential tuples multiply unary hom counts") {
    const BackendPtr w = fixture("W", Budget{});
    const FiniteCategory c = walking_arrow();
    for (const Signature& sig : all_signatures(*w, 3)) {
        std::size_t want = 1;
        for (ObjId a : sig.domain) want *= c.hom(a, sig.codomain).size();
        CHECK(hom_vec(*w, sig).size() == want);
    }

    const ArrId f = c.arrow_index("f");
    const ArrId ia = c.identities[0];
    const Arrow ff{Signature{{0, 0}, 1}, {f, f}};
    const Arrow iaa{Signature{{0, 0}, 0}, {ia, ia}};
    const Arrow ia1{Signature{{0}, 0}, {ia}};
    const Arrow got = w->compose(ff, std::vector<Arrow>{iaa, ia1});
    CHECK(got.sig.domain == std::vector<ObjId>{0, 0, 0});
    CHECK(got.code == std::vector<std::uint64_t>{f, f, f});

    // component i of the permuted tuple lands at slot map[i]
    const Arrow fb{Signature{{0, 1}, 1}, {f, c.identities[1]}};
    const Arrow sw = w->sym_act(swap_map(0, 1), fb);
    CHECK(sw.sig.domain == std::vector<ObjId>{1, 0});
    CHECK(sw.code == std::vector<std::uint64_t>{c.identities[1], f});

    const BackendPtr z = fixture("Z2seq", Budget{});
    CHECK(hom_vec(*z, Signature{{0, 0}, 0}).size() == 4);
    const Arrow se{Signature{{0, 0}, 0}, {1, 0}};
    const Arrow s1{Signature{{0}, 0}, {1}};
    CHECK(z->compose(se, std::vector<Arrow>{s1, s1}).code == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("unary embedding exposes the category at arity one only") {
    const BackendPtr wu = fixture("Wu", Budget{});
    const FiniteCategory c = walking_arrow();
    CHECK(hom_vec(*wu, Signature{{0}, 1}).size() == 1);
    CHECK(hom_vec(*wu, Signature{{1}, 0}).empty());
    CHECK(hom_vec(*wu, Signature{{0, 0}, 1}).empty());
    CHECK(hom_vec(*wu, Signature{{}, 1}).empty());
    CHECK_FALSE(wu->cartesian());
    const Arrow f{Signature{{0}, 1}, {c.arrow_index("f")}};
    CHECK(wu->compose(f, std::vector<Arrow>{wu->identity(0)}) == f);
    CHECK(wu->sym_act(identity_map({0}), f) == f);
}

TEST_CASE("discrete monoid homs are subsingletons keyed by the product") {
    const BackendPtr z = fixture("Z2", Budget{});
    CHECK(hom_vec(*z, Signature{{1, 1}, 0}).size() == 1);
    CHECK(hom_vec(*z, Signature{{1}, 0}).empty());
    CHECK(hom_vec(*z, Signature{{1, 0}, 1}).size() == 1);
    CHECK(hom_vec(*z, Signature{{}, 0}).size() == 1);
    CHECK(hom_vec(*z, Signature{{}, 1}).empty());

    const Arrow u = hom_vec(*z, Signature{{1, 0}, 1}).front();
    const Arrow sw = z->sym_act(swap_map(1, 0), u);
    CHECK(sw.sig.domain == std::vector<ObjId>{0, 1});
    CHECK(sw.sig.codomain == 1);

    const auto ua = z->universal_arrow({1, 1});
    REQUIRE(ua.has_value());
    CHECK(ua->sig.codomain == 0);
}

TEST_CASE("tensor homs reduce to the folded object") {
    const BackendPtr wj = fixture("Wj", Budget{});
    CHECK(hom_vec(*wj, Signature{{0, 1}, 1}).size() == 1);
    CHECK(hom_vec(*wj, Signature{{0, 1}, 0}).empty());
    CHECK(hom_vec(*wj, Signature{{}, 0}).size() == 1);  // unit is a
    CHECK(hom_vec(*wj, Signature{{}, 1}).size() == 1);  // the join arrow out of the unit

    const auto ua = wj->universal_arrow({0, 1});
    REQUIRE(ua.has_value());
    CHECK(ua->sig.codomain == 1);

    const Arrow u = hom_vec(*wj, Signature{{0, 1}, 1}).front();
    const Arrow sw = wj->sym_act(swap_map(0, 1), u);
    CHECK(sw.sig.domain == std::vector<ObjId>{1, 0});
    CHECK(sw == hom_vec(*wj, Signature{{1, 0}, 1}).front());
    CHECK(wj->sym_act(swap_map(1, 0), sw) == u);
}

TEST_CASE("truth-value tuples contract by addition and weaken by zero") {
    const BackendPtr b = fixture("Bool", Budget{});
    CHECK(b->cartesian());
    CHECK(hom_vec(*b, Signature{{0, 0}, 0}).size() == 4);
    const auto tup = [&](std::vector<std::uint64_t> code) {
        return Arrow{Signature{std::vector<ObjId>(code.size(), 0), 0}, std::move(code)};
    };
    CHECK(b->contract(tup({1, 1}), 0).code == std::vector<std::uint64_t>{1});
    CHECK(b->contract(tup({1, 0}), 0).code == std::vector<std::uint64_t>{1});
    CHECK(b->contract(tup({0, 0}), 0).code == std::vector<std::uint64_t>{0});
    CHECK(b->weaken(tup({1}), 0, 0).code == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("formal sums grade by multiset size") {
    const BackendPtr fw = fixture("FreeW", Budget{});
    const FiniteCategory c = walking_arrow();
    const std::uint64_t f = c.arrow_index("f");

    const HomSet graded = fw->hom(Signature{{0}, 1}, 4);
    REQUIRE(graded.arrows.size() == 4);
    CHECK(graded.truncated);
    CHECK(graded.arrows[0].code == std::vector<std::uint64_t>{0});
    CHECK(graded.arrows[1].code == std::vector<std::uint64_t>{1, f});
    CHECK(graded.arrows[2].code == std::vector<std::uint64_t>{2, f, f});
    CHECK(graded.arrows[3].code == std::vector<std::uint64_t>{3, f, f, f});

    const HomSet zero_only = fw->hom(Signature{{1}, 0}, 10);
    CHECK(zero_only.arrows.size() == 1);
    CHECK_FALSE(zero_only.truncated);
    CHECK(zero_only.arrows[0].code == std::vector<std::uint64_t>{0});

    CHECK(fw->identity(0).code == std::vector<std::uint64_t>{1, c.identities[0]});

    // convolution multiplies multiset multiplicities
    const Arrow two_f{Signature{{0}, 1}, {2, f, f}};
    const Arrow two_id{Signature{{0}, 0}, {2, 0, 0}};
    CHECK(fw->compose(two_f, std::vector<Arrow>{two_id}).code ==
          std::vector<std::uint64_t>{4, f, f, f, f});

    const Arrow split{Signature{{0, 0}, 1}, {1, f, 2, f, f}};
    CHECK(fw->contract(split, 0).code == std::vector<std::uint64_t>{3, f, f, f});
    const Arrow wk = fw->weaken(graded.arrows[1], 1, 1);
    CHECK(wk.sig.domain == std::vector<ObjId>{0, 1});
    CHECK(wk.code == std::vector<std::uint64_t>{1, f, 0});

    const Arrow sw = fw->sym_act(swap_map(0, 1), wk);
    CHECK(sw.sig.domain == std::vector<ObjId>{1, 0});
    CHECK(sw.code == std::vector<std::uint64_t>{0, 1, f});
}

TEST_CASE("terminal backend has one arrow per signature") {
    const BackendPtr t = fixture("T", Budget{});
    CHECK(t->cartesian());
    for (const Signature& sig : all_signatures(*t, 3)) {
        const auto hs = hom_vec(*t, sig);
        REQUIRE(hs.size() == 1);
        CHECK(hs.front().sig == sig);
    }
    const Arrow u = hom_vec(*t, Signature{{0, 0}, 0}).front();
    CHECK(t->compose(u, std::vector<Arrow>{t->identity(0), t->identity(0)}).sig == u.sig);
}

TEST_CASE("hom cache memoizes and records truncation") {
    const BackendPtr nat = fixture("Nat", Budget{});
    Budget tight;
    tight.max_enum = 7;
    HomCache cache(*nat, tight);
    CHECK_FALSE(cache.truncated());
    const HomSet& hs = cache.get(Signature{{0}, 0});
    CHECK(hs.arrows.size() == 7);
    CHECK(cache.truncated());
    CHECK(&cache.get(Signature{{0}, 0}) == &hs);

    const BackendPtr w = fixture("W", Budget{});
    HomCache roomy(*w, Budget{});
    for (const Signature& sig : all_signatures(*w, 2)) roomy.get(sig);
    CHECK_FALSE(roomy.truncated());
}

TEST_CASE("checked wrappers reject malformed requests") {
    const BackendPtr fs = fixture("FS2", Budget{});
    CHECK_THROWS_AS(check_signature(*fs, Signature{{3}, 0}), InputError);
    CHECK_THROWS_AS(check_signature(*fs, Signature{{0}, 7}), InputError);
    CHECK_THROWS_AS(hom_checked(*fs, Signature{{2, 2, 2, 2}, 2}, Budget{}), BudgetError);
    const Arrow f = hom_vec(*fs, Signature{{2}, 2}).front();
    const Arrow g = hom_vec(*fs, Signature{{1}, 1}).front();
    CHECK_THROWS_AS(fs->compose(f, std::vector<Arrow>{g}), InputError);
    CHECK_THROWS_AS(fixture("nope", Budget{}), InputError);
}

TEST_CASE("general family maps act through the factored form") {
    const BackendPtr fs = fixture("FS2", Budget{});
    // diagonal then forget: f(x,y) acted by [0,0] gives x -> f(x,x)
    const FamilyMap diag{{0, 0}, {2, 2}, {2}};
    for (const Arrow& f : hom_vec(*fs, Signature{{2, 2}, 2})) {
        const Arrow d = cart_act(*fs, diag, f);
        CHECK(d.sig.domain == std::vector<ObjId>{2});
        for (std::uint64_t x = 0; x < 2; ++x) CHECK(eval_table(d, {x}) == eval_table(f, {x, x}));
    }
    const BackendPtr tight = fixture("FS2t", Budget{});
    const Arrow f = hom_vec(*tight, Signature{{2, 2}, 2}).front();
    CHECK_THROWS_AS(cart_act(*tight, diag, f), UnsupportedAction);
}
