#pragma once

// Set-valued semantics: models of a theory backend are functors into the
// finite-sets backend with carriers bounded by a size cap. Counting is raw
// (labeled); isomorphism classing is a separate brute-force pass.

#include <cstddef>
#include <vector>

#include "mcat/functors.hpp"
#include "mcat/homs.hpp"
#include "mcat/validate.hpp"

namespace mcat {

struct Model {
    MFunctor functor;          // lands in finset(size_cap, true)
    std::size_t size_cap = 0;  // carrier bound the enumeration ran under
};

// Every model of t with carriers of size at most size_cap, in enumeration
// order. Cartesian theories enumerate functors preserving contractions and
// weakenings; plain functors otherwise.
std::vector<Model> enumerate_models(BackendPtr t, std::size_t size_cap, const Budget& b);

// The model conjugated by one carrier permutation per theory object.
// perm[x] permutes the elements of the carrier chosen for object x.
Model relabel_model(const Model& m, const std::vector<std::vector<std::size_t>>& perm);

// Orbit count of the list under carrier relabeling. Every relabeled model
// must land back in the list; InputError otherwise.
std::size_t model_iso_count(const std::vector<Model>& models);

// Models of the sequential theory on c against pairs of a set-valued
// functor on c and a compatible commutative monoid structure per object,
// with explicit maps both ways and exact count equality.
ValidationReport kronecker_semantics_check(const FiniteCategory& c, std::size_t size_cap,
                                           const Budget& b);

// The hom multicategory of set-valued models of t: functor objects and
// structure-respecting transforms, carriers capped at size_cap.
BackendPtr model_hom_mcat(BackendPtr t, std::size_t size_cap, const Budget& b);

}  // namespace mcat
