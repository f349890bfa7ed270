#pragma once

// Plain finite categories with optional extra structure: commutative-monoid
// enrichment of the hom-sets, closed strict tensor tables, chosen binary
// products. Every load path runs the corresponding axiom check and throws
// InputError with a located message on the first violation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcat/base.hpp"

namespace mcat {

using ArrId = std::uint32_t;
inline constexpr ArrId kNoArr = static_cast<ArrId>(-1);

struct CatArrow {
    std::string name;
    ObjId dom = 0;
    ObjId cod = 0;
};

struct FiniteCategory {
    std::string name;
    std::vector<std::string> objects;
    std::vector<CatArrow> arrows;     // identities included
    std::vector<ArrId> identities;    // one per object
    // comp[g][f] = g after f when cod f == dom g, else kNoArr.
    std::vector<std::vector<ArrId>> comp;

    std::size_t object_count() const { return objects.size(); }
    ArrId compose(ArrId g, ArrId f) const;
    std::vector<ArrId> hom(ObjId x, ObjId y) const;  // ascending arrow ids
    ObjId object_index(const std::string& nm) const;
    ArrId arrow_index(const std::string& nm) const;
};

// Identity laws, totality over composable pairs, dom/cod bookkeeping,
// associativity over all composable triples.
void check_category(const FiniteCategory& c);

// Commutative-monoid structure on every hom-set, compatible with
// composition on both sides (bilinear, zero absorbing).
struct CMonEnrichment {
    // zero[x][y] = the zero arrow x -> y.
    std::vector<std::vector<ArrId>> zero;
    // add[{f,g}] = f + g; keys stored for both orders.
    std::map<std::pair<ArrId, ArrId>, ArrId> add;

    ArrId plus(ArrId f, ArrId g) const;
};

void check_enrichment(const FiniteCategory& c, const CMonEnrichment& e);

struct PreadditiveCategory {
    FiniteCategory cat;
    CMonEnrichment enr;
};

// Strict tensor tables, closed over the listed objects. The braiding is
// optional; without it only a plain monoidal structure is claimed.
struct StrictMonoidalData {
    FiniteCategory cat;
    ObjId unit = 0;
    std::vector<std::vector<ObjId>> tensor_obj;          // X (x) Y
    std::map<std::pair<ArrId, ArrId>, ArrId> tensor_arr; // f (x) g
    std::optional<std::vector<std::vector<ArrId>>> braiding;  // c[X][Y] : X(x)Y -> Y(x)X

    ObjId tobj(ObjId x, ObjId y) const { return tensor_obj[x][y]; }
    ArrId tarr(ArrId f, ArrId g) const;
    ObjId tobj_family(const std::vector<ObjId>& fam) const;  // left fold, unit for empty
};

void check_monoidal(const StrictMonoidalData& d);

// Chosen terminal object and binary products, total over object pairs.
struct ChosenProducts {
    ObjId terminal = 0;
    struct Pair {
        ObjId prod;
        ArrId p1;
        ArrId p2;
    };
    std::vector<std::vector<Pair>> pairs;  // pairs[x][y]
};

void check_products(const FiniteCategory& c, const ChosenProducts& p);

// The product category c x d: objects and arrows are pairs, composition
// componentwise. Object (x,y) has id x*|obj d| + y, arrow (f,g) has id
// f*|arr d| + g.
FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d);

}  // namespace mcat
