#pragma once

// Multicategory functors with finite presentations. A functor is stored as
// one of a few shapes keyed to its source backend: an explicit arrow graph,
// or generator data (a commutative monoid per object plus unary images) for
// the sequential and arithmetic sources whose hom-sets grade without bound.

#include <map>
#include <string>
#include <vector>

#include "mcat/backend.hpp"
#include "mcat/constructions.hpp"

namespace mcat {

enum class FunctorKind {
    identity,       // same backend on both sides
    graph,          // explicit image for every source arrow within budget
    seq_monoid,     // source seq(C): unary images plus a monoid per object
    natrig_monoid,  // source arithmetic: one commutative monoid
};

struct MFunctor {
    FunctorKind kind = FunctorKind::graph;
    BackendPtr src;
    BackendPtr dst;
    std::vector<ObjId> obj_map;      // per source object
    std::map<Arrow, Arrow> graph;    // graph kind: source arrow to image
    std::vector<MonoidOn> monoid;    // monoid kinds: per source object
    std::vector<Arrow> unary_image;  // seq_monoid: per source category arrow id

    ObjId obj(ObjId x) const;
    // InputError outside the stored data (graph kind past the budget).
    Arrow apply(const Arrow& f) const;
    // Stable one-line presentation of the functor data.
    std::string describe() const;
};

MFunctor identity_functor(BackendPtr m);

struct FunctorCheck {
    bool ok = true;
    bool fp = false;     // contractions/weakenings preserved, when checked
    std::string detail;  // first violation
};

// Identity, composition and symmetry preservation by sweep. With check_fp
// and cartesian backends on both sides, contraction and weakening
// preservation is swept as well and reported in fp.
FunctorCheck check_functor(const MFunctor& F, const Budget& b, bool check_fp);

// Every functor src -> dst within the budget, deterministically ordered.
// fp_only restricts to functors preserving the cartesian structure and
// requires it on both sides. Sources with no finite generating scheme under
// the budget raise BudgetError.
std::vector<MFunctor> enumerate_functors(BackendPtr src, BackendPtr dst, const Budget& b,
                                         bool fp_only);

// n-fold multiplication of a monoid on x: unit at n = 0, identity at n = 1.
Arrow monoid_power(const Backend& d, const MonoidOn& c, ObjId x, std::size_t n);

// Unary arrow x -> x collapsing k inputs into one by the monoid: the
// weakened unit at k = 0, identity at k = 1, contractions above.
Arrow scalar_arrow(const Backend& d, const MonoidOn& c, ObjId x, std::uint64_t k);

}  // namespace mcat
