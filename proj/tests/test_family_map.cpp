#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "mcat/family_map.hpp"

using namespace mcat;

namespace {

// every family map over two objects with source arity <= 3 and target
// arity <= 2, generated directly from the definition
std::vector<FamilyMap> small_maps() {
    std::vector<FamilyMap> out;
    for (std::size_t m = 0; m <= 2; ++m) {
        std::vector<ObjId> target(m);
        std::vector<std::size_t> tpick(m, 0);
        while (true) {
            for (std::size_t i = 0; i < m; ++i) target[i] = static_cast<ObjId>(tpick[i]);
            for (std::size_t n = 0; n <= 3; ++n) {
                if (n > 0 && m == 0) break;
                std::vector<std::size_t> map(n, 0);
                while (true) {
                    FamilyMap s;
                    s.map = map;
                    s.target = target;
                    for (std::size_t i = 0; i < n; ++i) s.source.push_back(target[map[i]]);
                    out.push_back(std::move(s));
                    std::size_t i = n;
                    bool moved = false;
                    while (i > 0) {
                        --i;
                        if (++map[i] < m) {
                            moved = true;
                            break;
                        }
                        map[i] = 0;
                    }
                    if (!moved) break;
                }
            }
            std::size_t i = m;
            bool moved = false;
            while (i > 0) {
                --i;
                if (++tpick[i] < 2) {
                    moved = true;
                    break;
                }
                tpick[i] = 0;
            }
            if (!moved) break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("well-formed maps pass, mismatches throw") {
    for (const FamilyMap& s : small_maps()) CHECK_NOTHROW(check_family_map(s));

    FamilyMap bad;
    bad.map = {0};
    bad.source = {1};
    bad.target = {0};  // target[0] != source[0]
    CHECK_THROWS_AS(check_family_map(bad), InputError);

    FamilyMap range;
    range.map = {2};
    range.source = {0};
    range.target = {0, 0};
    CHECK_THROWS_AS(check_family_map(range), InputError);
}

TEST_CASE("identity and composition") {
    const std::vector<ObjId> fam{3, 1, 3};
    const FamilyMap id = identity_map(fam);
    CHECK(id.map == std::vector<std::size_t>{0, 1, 2});
    CHECK(id.is_bijective());
    CHECK(id.is_monotone());

    for (const FamilyMap& s : small_maps()) {
        CHECK(compose(identity_map(s.target), s) == s);
        CHECK(compose(s, identity_map(s.source)) == s);
    }

    // associativity via a contraction after a weakening
    const std::vector<ObjId> base{2, 2};
    const FamilyMap c = contraction_map(base, 0);
    const FamilyMap w = weakening_map(c.target, 1, 5);
    const FamilyMap wc = compose(w, c);
    CHECK(wc.source == base);
    CHECK(wc.target == std::vector<ObjId>{2, 5});
    CHECK(wc.map == std::vector<std::size_t>{0, 0});
}

TEST_CASE("factorization recomposes and the monotone part is monotone") {
    for (const FamilyMap& s : small_maps()) {
        const Factorization f = factor_family_map(s);
        CHECK(f.bijection.is_bijective());
        CHECK(f.monotone.is_monotone());
        CHECK(compose(f.monotone, f.bijection) == s);
        std::size_t total = 0;
        for (std::size_t k : f.block_sizes) total += k;
        CHECK(total == s.src_arity());
        CHECK(f.block_sizes.size() == s.tgt_arity());
    }
}

TEST_CASE("all block factorizations recompose to the same map") {
    FamilyMap s;
    s.map = {1, 0, 1, 0};
    s.source = {7, 4, 7, 4};
    s.target = {4, 7};
    const auto all = all_block_factorizations(s);
    // two positions per block, two orders each
    CHECK(all.size() == 4);
    for (const Factorization& f : all) {
        CHECK(f.bijection.is_bijective());
        CHECK(f.monotone.is_monotone());
        CHECK(compose(f.monotone, f.bijection) == s);
    }
}

TEST_CASE("transpose map sends (i,j) to (j,i)") {
    const std::size_t n = 2, m = 3;
    std::vector<ObjId> src, tgt;
    // i-outer: two copies of objects 10,11,12; j-outer: three blocks of 2
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) src.push_back(static_cast<ObjId>(10 + j));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) tgt.push_back(static_cast<ObjId>(10 + j));
    const FamilyMap t = transpose_map(n, m, src, tgt);
    CHECK_NOTHROW(check_family_map(t));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) CHECK(t.map[i * m + j] == j * n + i);
}

TEST_CASE("block map reindexes composite domains") {
    // sigma : 2 -> 2 swapping positions, g0 unary and g1 binary
    FamilyMap sigma;
    sigma.map = {1, 0};
    sigma.source = {5, 6};
    sigma.target = {6, 5};
    const std::vector<std::vector<ObjId>> doms{{8}, {9, 9}};
    // f(g_sigma(0), g_sigma(1)) = f(g1, g0) has domain dom(g1) ++ dom(g0),
    // the composite (sigma f)(g0, g1) has domain dom(g0) ++ dom(g1)
    const FamilyMap blk = block_map(sigma, doms);
    CHECK_NOTHROW(check_family_map(blk));
    CHECK(blk.source == std::vector<ObjId>{9, 9, 8});
    CHECK(blk.target == std::vector<ObjId>{8, 9, 9});
    CHECK(blk.map == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("contraction and weakening shapes") {
    const std::vector<ObjId> fam{2, 2, 5};
    const FamilyMap c = contraction_map(fam, 0);
    CHECK(c.source == fam);
    CHECK(c.target == std::vector<ObjId>{2, 5});
    CHECK(c.map == std::vector<std::size_t>{0, 0, 1});

    const FamilyMap w = weakening_map(std::vector<ObjId>{2, 5}, 2, 9);
    CHECK(w.source == std::vector<ObjId>{2, 5});
    CHECK(w.target == std::vector<ObjId>{2, 5, 9});
    CHECK(w.map == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(contraction_map(std::vector<ObjId>{2, 5}, 0), InputError);
}

TEST_CASE("permutations enumerate in lexicographic order") {
    const auto p3 = all_permutations(3);
    CHECK(p3.size() == 6);
    CHECK(p3.front() == std::vector<std::size_t>({0, 1, 2}));
    CHECK(p3.back() == std::vector<std::size_t>({2, 1, 0}));
    CHECK(std::is_sorted(p3.begin(), p3.end()));
    CHECK(all_permutations(0).size() == 1);

    const std::vector<ObjId> fam{4, 4, 7};
    const FamilyMap pm = permutation_map({2, 0, 1}, fam);
    CHECK_NOTHROW(check_family_map(pm));
    CHECK(pm.is_bijective());
    // target position p[i] holds source object i
    CHECK(pm.target == std::vector<ObjId>{4, 7, 4});
}
