#pragma once

// Representability, centers and sequentiality, algebraic and universal
// products, biproducts, coproduct cones, coreflections.

#include <optional>
#include <string>
#include <vector>

#include "mcat/homs.hpp"
#include "mcat/validate.hpp"

namespace mcat {

// u is preuniversal when every arrow out of its domain family factors
// uniquely through u by an arity-one arrow.
bool preuniversal(const Backend& m, const Arrow& u, const Budget& b);

// First preuniversal arrow for the family: the designated representing
// arrow when the backend offers a valid one, else exhaustive search in
// deterministic order. BudgetError when absence cannot be certified.
std::optional<Arrow> find_preuniversal(const Backend& m,
                                       const std::vector<ObjId>& family,
                                       const Budget& b);

// Preuniversal arrows exist for every family within the arity cap, and the
// found witnesses stay preuniversal under composition.
ValidationReport is_representable(const Backend& m, const Budget& b);

// One commutative monoid per object whose components commute with every
// arrow within budget.
struct CentralMonoidWitness {
    std::vector<MonoidOn> per_object;  // indexed by object
};
std::optional<CentralMonoidWitness> find_central_monoid(const Backend& m, const Budget& b);
std::size_t central_monoid_count(const Backend& m, const Budget& b);

// n-fold component of the witness at one object: unit at n = 0, the
// multiplication folded left above.
Arrow central_power(const Backend& m, const CentralMonoidWitness& w, ObjId x,
                    std::size_t n);

// Central unital magmas carry no associativity or commutativity demand of
// their own; each found family must already be a commutative monoid family,
// and all finds must coincide with the central monoids.
ValidationReport hilton_eckmann_check(const Backend& m, const Budget& b);

// Full sub of the endo hom [m, m] on the identity functor.
BackendPtr center(BackendPtr m, const Budget& b);

// The instance-checkable sequentiality conditions, one law each: hom-sets
// count like tuples over the arity-one slice, a central monoid exists, a
// central unital magma exists, the monoid backend reproduces m object by
// object and hom-set by hom-set, and the closed-form tensor count agrees
// when the tuple condition holds (reported indeterminate otherwise).
ValidationReport sequentiality_report(BackendPtr m, const Budget& b);

// Projections plus a pairing subject to two equation groups: the pairing on
// the projections contracts to the identity, and each projection after the
// pairing is an identity with weakened extra slots.
struct AlgebraicProductWitness {
    ObjId c = 0;
    std::vector<Arrow> projections;  // c -> family[i]
    Arrow pairing;                   // family -> c
};
bool algebraic_product_valid(const Backend& m, const std::vector<ObjId>& family,
                             const AlgebraicProductWitness& w);
std::optional<AlgebraicProductWitness> algebraic_product_search(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b);
std::vector<AlgebraicProductWitness> algebraic_product_all(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b);

// Projections through which every parallel family within the budget
// factors uniquely.
struct UniversalProductWitness {
    ObjId c = 0;
    std::vector<Arrow> projections;
};
bool universal_product_valid(const Backend& m, const std::vector<ObjId>& family,
                             ObjId c, const std::vector<Arrow>& projections,
                             const Budget& b);
std::optional<UniversalProductWitness> universal_product_search(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b);

// For every family within the arity cap: the algebraic, universal, and
// preuniversal searches agree on existence, found witnesses convert into
// one another and re-validate, and composites of found witnesses validate.
ValidationReport product_equivalence_report(const Backend& m, const Budget& b);

// p, q, i, j with the four projection/injection equations plus the summed
// identity through the central monoid.
struct BiproductData {
    ObjId c = 0;
    Arrow p, q;  // projections c -> x, c -> y
    Arrow i, j;  // injections x -> c, y -> c
};
std::optional<BiproductData> biproduct_view(const Backend& m, ObjId x, ObjId y,
                                            const Budget& b);

// Tensor-gives-coproducts: the unit object is initial in the arity-one
// slice, tensor objects admit injections forming coproduct cones, and both
// together line up with the central monoid test.
ValidationReport cocartesian_check(const Backend& m, const Budget& b);

// Functors l -> monoid backend of m against functors l -> m, compared
// through the forgetful translation onto carriers; the fp flavor restricts
// both sides to functors preserving the cartesian actions.
ValidationReport coreflection_check(BackendPtr l, BackendPtr m, const Budget& b);
ValidationReport fp_coreflection_check(BackendPtr l, BackendPtr m, const Budget& b);

}  // namespace mcat
