#pragma once

// Maps of object families. A FamilyMap sigma with source family alpha
// (length n) and target family beta (length m) carries a position map
// {0..n-1} -> {0..m-1} with beta[sigma[i]] == alpha[i].
//
// Direction convention, fixed once for the whole engine: sigma maps the
// positions of f's domain to the positions of (sigma f)'s domain, and the
// action reads (sigma f)(x_0..x_{m-1}) = f(x_{sigma(0)}, ..., x_{sigma(n-1)}).
// So for f : A,B,A -> D and sigma = [2,0,2] (0-based) over target family
// B,C,A we get (sigma f)(b,c,a) = f(a,b,a). Repeats contract, missed
// target positions weaken.

#include <cstddef>
#include <vector>

#include "mcat/base.hpp"

namespace mcat {

struct FamilyMap {
    std::vector<std::size_t> map;  // length n, values < m
    std::vector<ObjId> source;     // length n: domain family of f
    std::vector<ObjId> target;     // length m: domain family of sigma f

    std::size_t src_arity() const { return source.size(); }
    std::size_t tgt_arity() const { return target.size(); }

    bool is_bijective() const;
    bool is_monotone() const;  // weakly increasing position map

    friend bool operator==(const FamilyMap& a, const FamilyMap& b) {
        return a.map == b.map && a.source == b.source && a.target == b.target;
    }
    friend bool operator!=(const FamilyMap& a, const FamilyMap& b) { return !(a == b); }
};

// Throws InputError unless sizes line up and target[map[i]] == source[i].
void check_family_map(const FamilyMap& s);

FamilyMap identity_map(const std::vector<ObjId>& family);

// rho after sigma; requires sigma.target == rho.source.
FamilyMap compose(const FamilyMap& rho, const FamilyMap& sigma);

// Blockwise sum: acts block i by parts[i] on a concatenated family.
FamilyMap sum(const std::vector<FamilyMap>& parts);

// Canonical factorization sigma = monotone . bijection (Remark on shapes:
// every family map is a bijection followed by a sum of constant maps).
// The bijection sorts source positions by (sigma value, original index);
// the monotone has block sizes |sigma^-1(j)|.
struct Factorization {
    FamilyMap bijection;  // n -> n
    FamilyMap monotone;   // n -> m, weakly increasing
    std::vector<std::size_t> block_sizes;  // length m, sum n
};
Factorization factor_family_map(const FamilyMap& s);

// All factorizations differing from the canonical one by the order in which
// equal-valued source positions are listed. Small inputs only; used to
// validate that the cartesian action is independent of the factorization.
std::vector<Factorization> all_block_factorizations(const FamilyMap& s, std::size_t cap = 64);

// The (m,n)-transpose permutation used by the transform-naturality law and
// the centrality law: source grouped i-outer/j-inner (i < n functors-or-
// copies, j < m arguments), target grouped j-outer/i-inner. Position
// (i*m + j) maps to (j*n + i). Families must describe the grouped domains.
FamilyMap transpose_map(std::size_t n, std::size_t m,
                        const std::vector<ObjId>& source_grouped_i_outer,
                        const std::vector<ObjId>& target_grouped_j_outer);

// The block map sigma' of composition compatibility: given sigma : n -> m
// over families and the domain families of arrows g_0..g_{m-1} (g_j plugs
// into target position j), the composite (sigma f)(g_0..g_{m-1}) equals
// sigma' applied to f(g_{sigma(0)}, ..., g_{sigma(n-1)}). Source block i is
// a copy of dom(g_{sigma(i)}) and lands identically on target block
// sigma(i).
FamilyMap block_map(const FamilyMap& sigma, const std::vector<std::vector<ObjId>>& g_domains);

// Helpers for single contractions and weakenings, as family maps.
// contract: positions pos, pos+1 of `family` carry equal objects and merge.
FamilyMap contraction_map(const std::vector<ObjId>& family, std::size_t pos);
// weaken: insert object x at position pos (0 <= pos <= n) of the target.
FamilyMap weakening_map(const std::vector<ObjId>& family, std::size_t pos, ObjId x);

// A permutation as a family map on src; the target family is determined.
FamilyMap permutation_map(const std::vector<std::size_t>& p, const std::vector<ObjId>& src);

// Permutations of {0..n-1} in lexicographic order, as raw position vectors.
std::vector<std::vector<std::size_t>> all_permutations(std::size_t n);

// All position maps {0..n-1} -> {0..m-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_position_maps(std::size_t n, std::size_t m);

}  // namespace mcat
