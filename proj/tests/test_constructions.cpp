#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "mcat/constructions.hpp"
#include "mcat/fixtures.hpp"
#include "mcat/validate.hpp"

using namespace mcat;

namespace {

std::size_t hom_index(const Backend& m, const Arrow& a) {
    const auto hs = m.hom(a.sig, 10000).arrows;
    const auto it = std::find(hs.begin(), hs.end(), a);
    REQUIRE(it != hs.end());
    return static_cast<std::size_t>(it - hs.begin());
}

// Two backends agree structurally when homs have the same sizes and
// composition/symmetry act identically on hom positions.
void check_same_shape(const Backend& a, const Backend& b, std::size_t max_arity) {
    REQUIRE(a.object_count() == b.object_count());
    for (const Signature& sig : all_signatures(a, max_arity)) {
        const auto ha = a.hom(sig, 10000).arrows;
        const auto hb = b.hom(sig, 10000).arrows;
        REQUIRE(ha.size() == hb.size());
        for (std::size_t i = 0; i < ha.size(); ++i) {
            // compose with unary identities on both sides
            std::vector<Arrow> gsa, gsb;
            for (ObjId x : sig.domain) {
                gsa.push_back(a.identity(x));
                gsb.push_back(b.identity(x));
            }
            CHECK(hom_index(a, a.compose(ha[i], gsa)) == hom_index(b, b.compose(hb[i], gsb)));
            if (sig.arity() == 2) {
                const FamilyMap sw{{1, 0},
                                   sig.domain,
                                   {sig.domain[1], sig.domain[0]}};
                CHECK(hom_index(a, a.sym_act(sw, ha[i])) == hom_index(b, b.sym_act(sw, hb[i])));
            }
        }
    }
    // non-identity composites, unary factors drawn from every hom
    for (const Signature& sig : all_signatures(a, 2)) {
        const auto ha = a.hom(sig, 10000).arrows;
        const auto hb = b.hom(sig, 10000).arrows;
        for (std::size_t i = 0; i < ha.size(); ++i) {
            std::vector<std::vector<Arrow>> slots_a, slots_b;
            for (ObjId x : sig.domain) {
                slots_a.push_back(a.hom(Signature{{x}, x}, 10000).arrows);
                slots_b.push_back(b.hom(Signature{{x}, x}, 10000).arrows);
            }
            std::vector<std::size_t> pick(sig.arity(), 0);
            while (true) {
                std::vector<Arrow> gsa, gsb;
                for (std::size_t k = 0; k < pick.size(); ++k) {
                    gsa.push_back(slots_a[k][pick[k]]);
                    gsb.push_back(slots_b[k][pick[k]]);
                }
                CHECK(hom_index(a, a.compose(ha[i], gsa)) == hom_index(b, b.compose(hb[i], gsb)));
                std::size_t k = pick.size();
                bool done = pick.empty();
                while (k > 0) {
                    --k;
                    if (++pick[k] < slots_a[k].size()) break;
                    pick[k] = 0;
                    if (k == 0) done = true;
                }
                if (done) break;
            }
        }
    }
}

}  // namespace

TEST_CASE("snapshot tables reproduce the backend they were taken from") {
    const BackendPtr z = fixture("Z2seq", Budget{});
    const TableData t = snapshot_table(*z, 3, 10000);
    const BackendPtr back = table_mcat(t);
    check_same_shape(*z, *back, 3);
    CHECK(validate_multicat(*back, Budget{}).ok());
    CHECK(validate_symmetric(*back, Budget{}).ok());
}

TEST_CASE("a corrupted snapshot cell is caught and the witness replays") {
    const BackendPtr z = fixture("Z2seq", Budget{});
    const TableData clean = snapshot_table(*z, 3, 10000);
    TableData t = clean;

    // swap one composition cell to a different arrow of the same signature
    auto sig_of = [&](const std::string& name) {
        for (const auto& a : t.arrows)
            if (a.name == name) return std::pair{a.dom, a.cod};
        REQUIRE(false);
        return std::pair{std::vector<std::string>{}, std::string{}};
    };
    bool corrupted = false;
    for (auto& [key, val] : t.comp_cells) {
        const auto want = sig_of(val);
        for (const auto& a : t.arrows) {
            if (a.name != val && a.dom == want.first && a.cod == want.second) {
                val = a.name;
                corrupted = true;
                break;
            }
        }
        if (corrupted) break;
    }
    REQUIRE(corrupted);

    const BackendPtr bad = table_mcat(t);
    const ValidationReport r = validate_multicat(*bad, Budget{});
    CHECK_FALSE(r.ok());
    const Counterexample* w = r.first_witness();
    REQUIRE(w != nullptr);
    CHECK(replay(*bad, *w, Budget{}));
    // the witness speaks the table encoding, so the clean baseline is the
    // uncorrupted snapshot rather than the original backend
    CHECK_FALSE(replay(*table_mcat(clean), *w, Budget{}));
}

TEST_CASE("explicit tables fall back to unit-law cells") {
    TableData t;
    t.name = "tiny";
    t.objects = {"*"};
    t.arrows = {{"i", {"*"}, "*"}, {"m", {"*", "*"}, "*"}, {"e", {}, "*"}};
    t.identities = {"i"};
    const BackendPtr m = table_mcat(t);

    const Arrow mm = m->hom(Signature{{0, 0}, 0}, 10).arrows.front();
    const Arrow id = m->identity(0);
    const Arrow e = m->hom(Signature{{}, 0}, 10).arrows.front();

    // all-identity factors and the empty factor list need no explicit cell
    CHECK(m->compose(mm, std::vector<Arrow>{id, id}) == mm);
    CHECK(m->compose(e, std::vector<Arrow>{}) == e);
    CHECK(m->compose(id, std::vector<Arrow>{mm}) == mm);
    // anything else does
    CHECK_THROWS_AS(m->compose(mm, std::vector<Arrow>{mm, id}), InputError);
    CHECK(m->sym_act(identity_map({0, 0}), mm) == mm);
    CHECK_THROWS_AS(m->sym_act(FamilyMap{{1, 0}, {0, 0}, {0, 0}}, mm), UnsupportedAction);
}

TEST_CASE("enrichment extraction inverts the cartesian embedding") {
    const PreadditiveCategory want = boolean_rig();
    const BackendPtr b = fixture("Bool", Budget{});
    const PreadditiveCategory got = extract_enrichment(*b, Budget{});

    REQUIRE(got.cat.objects.size() == 1);
    REQUIRE(got.cat.arrows.size() == want.cat.arrows.size());
    CHECK(got.cat.comp == want.cat.comp);
    CHECK(got.cat.identities == want.cat.identities);
    CHECK(got.enr.zero == want.enr.zero);
    CHECK(got.enr.add == want.enr.add);

    // no central monoid, no enrichment: plain seq backends are not cartesian
    CHECK_THROWS_AS(extract_enrichment(*fixture("W", Budget{}), Budget{}), InputError);
}

TEST_CASE("tensor closed forms have the expected hom counts") {
    const FiniteCategory w = walking_arrow();
    CHECK(tensor_seq_count_check(w, w, Budget{}).ok);
    CHECK(tensor_seq_count_check(terminal_category(), z2_category(), Budget{}).ok);

    const BackendPtr lhs = bv_tensor_seq(w, w);
    const BackendPtr rhs = seq(product_category(w, w));
    REQUIRE(lhs->object_count() == rhs->object_count());
    for (const Signature& sig : all_signatures(*lhs, 2))
        CHECK(lhs->hom(sig, 10000).arrows.size() == rhs->hom(sig, 10000).arrows.size());

    const BackendPtr mixed = bv_tensor_unary(w, fixture("Z2seq", Budget{}));
    const BackendPtr factors = product_mcat(seq(w), fixture("Z2seq", Budget{}));
    REQUIRE(mixed->object_count() == factors->object_count());
    for (const Signature& sig : all_signatures(*mixed, 2))
        CHECK(mixed->hom(sig, 10000).arrows.size() == factors->hom(sig, 10000).arrows.size());
}

TEST_CASE("product backends count componentwise") {
    const BackendPtr w = fixture("W", Budget{});
    const BackendPtr z = fixture("Z2seq", Budget{});
    const BackendPtr p = product_mcat(w, z);
    REQUIRE(p->object_count() == 2);
    CHECK(product_left_of(*p) != nullptr);
    CHECK(product_right_of(*p) != nullptr);
    for (const Signature& sig : all_signatures(*p, 2)) {
        // split the pair signature into its factors and multiply counts
        Signature ls{{}, static_cast<ObjId>(sig.codomain / z->object_count())};
        Signature rs{{}, static_cast<ObjId>(sig.codomain % z->object_count())};
        for (ObjId a : sig.domain) {
            ls.domain.push_back(static_cast<ObjId>(a / z->object_count()));
            rs.domain.push_back(static_cast<ObjId>(a % z->object_count()));
        }
        const std::size_t want =
            w->hom(ls, 10000).arrows.size() * z->hom(rs, 10000).arrows.size();
        CHECK(p->hom(sig, 10000).arrows.size() == want);
    }
}

TEST_CASE("frobenius closed form holds on small inputs") {
    CHECK(frobenius_check(fixture("One", Budget{}), walking_arrow(), Budget{}).ok);
    CHECK(frobenius_check(fixture("W", Budget{}), z2_category(), Budget{}).ok);
}

TEST_CASE("commutative monoids on finite sets") {
    const BackendPtr fs = fixture("FS2", Budget{});
    CHECK(commutative_monoids_on(*fs, 0, Budget{}).empty());
    CHECK(commutative_monoids_on(*fs, 1, Budget{}).size() == 1);

    const auto ms = commutative_monoids_on(*fs, 2, Budget{});
    REQUIRE(ms.size() == 4);
    const std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> want = {
        {{0}, {0, 1, 1, 0}},  // xor with unit 0
        {{0}, {0, 1, 1, 1}},  // or with unit 0
        {{1}, {0, 0, 0, 1}},  // and with unit 1
        {{1}, {1, 0, 0, 1}},  // xnor with unit 1
    };
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(ms[i].unit.code == want[i].first);
        CHECK(ms[i].mul.code == want[i].second);
        CHECK(commutative_monoid_on(*fs, 2, ms[i]));
    }
    // xor with the wrong unit fails the unit law
    const MonoidOn wrong{Arrow{Signature{{}, 2}, {1}}, Arrow{Signature{{2, 2}, 2}, {0, 1, 1, 0}}};
    CHECK_FALSE(commutative_monoid_on(*fs, 2, wrong));
}

TEST_CASE("central families") {
    const auto bool_fams = central_families(*fixture("Bool", Budget{}), Budget{});
    REQUIRE(bool_fams.size() == 1);
    REQUIRE(bool_fams[0].size() == 1);
    CHECK(bool_fams[0][0].unit.arity() == 0);
    CHECK(bool_fams[0][0].mul.code == std::vector<std::uint64_t>{1, 1});

    // the empty carrier admits no monoid, so no family covers every object
    CHECK(central_families(*fixture("FS2", Budget{}), Budget{}).empty());

    CHECK(central_families(*fixture("Z2seq", Budget{}), Budget{}).size() == 1);
}

TEST_CASE("underlying category recovery") {
    const Budget b;
    const FiniteCategory fs = underlying_category(*fixture("FS2", b), b);
    CHECK_NOTHROW(check_category(fs));
    CHECK(fs.object_count() == 3);
    CHECK(fs.arrows.size() == 11);

    const FiniteCategory w = underlying_category(*fixture("W", b), b);
    CHECK(w.object_count() == 2);
    CHECK(w.arrows.size() == 3);

    CHECK_THROWS_AS(underlying_category(*fixture("Nat", b), b), BudgetError);

    const UnarySlice slice = unary_slice(*fixture("W", b), b);
    CHECK(slice.cat.arrows.size() == 3);
    CHECK(slice.index.size() == 3);
}

TEST_CASE("access helpers identify backend flavors") {
    const Budget b;
    CHECK(seq_category_of(*fixture("W", b)) != nullptr);
    CHECK(seq_category_of(*fixture("W", b))->objects.size() == 2);
    CHECK(seq_category_of(*fixture("FS2", b)) == nullptr);
    CHECK(seq_enrichment_of(*fixture("Bool", b)) != nullptr);
    CHECK(seq_enrichment_of(*fixture("W", b)) == nullptr);
    CHECK(unary_category_of(*fixture("Wu", b)) != nullptr);
    CHECK(unary_category_of(*fixture("W", b)) == nullptr);
    REQUIRE(discrete_monoid_of(*fixture("Z2", b)) != nullptr);
    CHECK(discrete_monoid_of(*fixture("Z2", b))->elements.size() == 2);
    CHECK(finset_cap_of(*fixture("FS2", b)) == 2);
}
