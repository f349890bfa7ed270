#pragma once

// Internal homs between multicategories, the monoid multicategory, the
// sequential exponent, and pointwise representability of functor families.

#include <string>
#include <vector>

#include "mcat/constructions.hpp"
#include "mcat/functors.hpp"

namespace mcat {

// A transform with several functor sources and one target: one component
// arrow per object of the base, jointly natural at every base arrow.
struct MultiTransform {
    std::vector<MFunctor> sources;
    MFunctor target;
    std::vector<Arrow> comps;  // indexed by base object
};

// Joint naturality within the budget: for every base arrow f the target
// image composed with the components at the domain equals, up to the
// transposition of the two groupings, the component at the codomain
// composed with the source images.
bool check_transform(const Backend& base, const Budget& b,
                     const std::vector<MFunctor>& sources, const MFunctor& target,
                     const std::vector<Arrow>& comps);

// Internal hom [m, n]: objects are the functors m -> n within the budget,
// arrows the multi-source transforms, composition pointwise. The fp variant
// restricts objects to cartesian-preserving functors. Cartesian structure is
// pointwise and available exactly when n carries one.
BackendPtr internal_hom(BackendPtr m, BackendPtr n, const Budget& b);
BackendPtr fp_hom(BackendPtr m, BackendPtr n, const Budget& b);

// The functor list behind an internal-hom style backend; null on other
// kinds. Valid while the backend lives.
const std::vector<MFunctor>* hom_objects_of(const Backend& h);

// Per-object components of an internal-hom or exponent arrow.
std::vector<Arrow> transform_components(const Backend& h, const Arrow& f);

// Commutative monoids in m, with the arrows of m that respect units and
// multiplications slotwise. Works over any symmetric backend; contractions
// and weakenings delegate to m when m carries them.
BackendPtr monoid_mcat(BackendPtr m, const Budget& b);

struct MonoidObject {
    ObjId carrier = 0;
    MonoidOn structure;
};

// The monoid list behind a monoid_mcat backend; null on other kinds.
const std::vector<MonoidObject>* monoid_objects_of(const Backend& h);

// Unary slice of monoid_mcat(m), plain and with the enrichment induced by
// the codomain monoid: zero is the weakened unit, addition contracts the
// multiplied pair.
FiniteCategory cmon_category(BackendPtr m, const Budget& b);
PreadditiveCategory cmon_preadditive(BackendPtr m, const Budget& b);

// Sequential exponent of m by c: objects are functors from c into the
// arity-one category of m, arrows are component families constrained by
// naturality against arity-one images only.
BackendPtr seq_exponent(const FiniteCategory& c, BackendPtr m, const Budget& b);

// Objects and unary hom-sets of [unary(c), m] against seq_exponent(c, m):
// the two filters are implemented independently and must agree, including
// identities and composition transport.
IsoReport iso_unaryhom_seqexp(const FiniteCategory& c, BackendPtr m, const Budget& b);

// Pointwise representing functor for a family of functors m -> n: takes the
// designated representing arrows of n at each object, solves for the arrow
// action, then verifies the universal property against every transform out
// of the family within the budget.
struct PointwiseHom {
    bool ok = false;
    std::string detail;
    MFunctor functor;          // graph kind
    MultiTransform universal;  // sources = the family, target = functor
};
PointwiseHom pointwise_universal(BackendPtr m, BackendPtr n,
                                 const std::vector<MFunctor>& family, const Budget& b);

}  // namespace mcat
