#pragma once

// Factories turning finite-category-style data into multicategory backends,
// plus the embedding/product constructions and their isomorphism checks.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcat/backend.hpp"
#include "mcat/category.hpp"

namespace mcat {

// --- sequential and unary embeddings ------------------------------------

// seq(c): arrows X1..Xn -> X are tuples of c-arrows Xi -> X; composition
// distributes componentwise. Symmetric, not cartesian.
BackendPtr seq(const FiniteCategory& c);

// seq over a preadditive category: contraction adds components, weakening
// inserts the zero arrow. Cartesian.
BackendPtr seq_cartesian(const PreadditiveCategory& p);

// unary(c): c embedded at arity one; homs at other arities are empty.
BackendPtr unary(const FiniteCategory& c);

// The terminal multicategory: one object, one arrow per arity.
BackendPtr terminal_mcat();

// Recover the arity-one category of any backend. BudgetError when a unary
// hom-set truncates.
FiniteCategory underlying_category(const Backend& m, const Budget& b);

// Same, keeping the lookup from backend arrows to slice arrow ids.
struct UnarySlice {
    FiniteCategory cat;
    std::map<Arrow, ArrId> index;
};
UnarySlice unary_slice(const Backend& m, const Budget& b);

// Recover hom addition and zeros from contractions/weakenings against the
// (unique) central monoid of a sequential cartesian backend. Inverse of
// seq_cartesian on the nose for its outputs. InputError when no central
// monoid exists within the budget.
PreadditiveCategory extract_enrichment(const Backend& m, const Budget& b);

// A commutative-monoid candidate on one object: unit () -> y and
// multiplication y,y -> y.
struct MonoidOn {
    Arrow unit;
    Arrow mul;
};

// Unit laws, associativity and commutativity of the pair on y.
bool commutative_monoid_on(const Backend& m, ObjId y, const MonoidOn& c);

// All commutative monoids carried by y, ordered by (unit, mul) hom position.
std::vector<MonoidOn> commutative_monoids_on(const Backend& m, ObjId y, const Budget& b);

// One monoid per object, jointly central: the multiplications commute with
// every arrow of arity <= max_arity / 2 up to the interleaving permutation.
bool central_family(const Backend& m, const std::vector<MonoidOn>& fam, const Budget& b);

// All jointly central families; empty when some object carries no monoid.
std::vector<std::vector<MonoidOn>> central_families(const Backend& m, const Budget& b);

// --- representable flavors ----------------------------------------------

// Closed strict tensor tables: hom(X1..Xn; X) = c(X1 (x) ... (x) Xn, X).
// Symmetric iff the data carries a braiding.
BackendPtr monoidal_to_mcat(const StrictMonoidalData& d);

// Chosen-products flavor: hom(X1..Xn; X) = c(X1 x ... x Xn, X) with the
// cartesian actions given by precomposition with projection pairings.
BackendPtr fp_category_to_mcat(const FiniteCategory& c, const ChosenProducts& p);

// Skeletal finite sets with objects 0..size_cap and function-table homs
// over the ambient product; representable exactly where the product size
// stays within the cap. `with_contractions` exposes the cartesian ops.
BackendPtr finset_mcat(std::size_t size_cap, bool with_contractions);

// --- symbolic backends ---------------------------------------------------

// One object, hom(*^n; *) = n-tuples of naturals, composition substitutes
// and scales. Graded enumeration; hom-sets are infinite.
BackendPtr nat_rig_seq();

// Sequential backend over the free preadditive category on c: components
// are finite multisets of c-arrows, composition is convolution.
BackendPtr free_preadditive_seq(const FiniteCategory& c);

// --- discrete monoids ----------------------------------------------------

struct MonoidTable {
    std::string name;
    std::vector<std::string> elements;
    std::size_t unit = 0;
    std::vector<std::vector<std::size_t>> table;  // table[x][y] = x*y

    std::size_t mult(std::size_t x, std::size_t y) const { return table[x][y]; }
};

void check_monoid(const MonoidTable& m);
bool monoid_commutative(const MonoidTable& m);

// Elements as objects, at most one arrow per signature: x1..xn -> x exists
// iff the product of the xi is x. Representable; symmetric only when the
// monoid is commutative.
BackendPtr discrete_monoid_mcat(const MonoidTable& m);

// The same monoid as a one-object category (arrows = elements).
FiniteCategory monoid_as_category(const MonoidTable& m);

// --- explicit tables -----------------------------------------------------

struct TableData {
    std::string name;
    std::vector<std::string> objects;
    struct TArrow {
        std::string name;
        std::vector<std::string> dom;
        std::string cod;
    };
    std::vector<TArrow> arrows;
    std::vector<std::string> identities;  // arrow name per object, unary
    // key: f(g1,...,gn) spelled with arrow names; identity cells may be
    // omitted (they default to the unit laws).
    std::map<std::string, std::string> comp_cells;
    // key: f@[i1,...,in] with 1-based images listing where each domain
    // position goes; identity permutations may be omitted.
    std::map<std::string, std::string> sym_cells;
};

BackendPtr table_mcat(const TableData& t);

// Explicit table image of a backend: every object, arrow, composition cell
// and symmetry cell within the caps. Arrow names are generated, identity
// and trivial-permutation cells are left to the table defaults.
// BudgetError when a swept hom-set truncates.
TableData snapshot_table(const Backend& m, std::size_t max_arity, std::uint64_t max_enum);

// --- products and tensor closed forms ------------------------------------

BackendPtr product_mcat(BackendPtr m, BackendPtr n);

// Tensor with a unary backend, realized through the closed form
// C^- (x) N  ~  seq(C) x N. The describe() string records the marker.
BackendPtr bv_tensor_unary(const FiniteCategory& c, BackendPtr n);

// Tensor of two sequential embeddings, realized through the closed form
// seq(C) (x) seq(D)  ~  seq(C x D).
BackendPtr bv_tensor_seq(const FiniteCategory& c, const FiniteCategory& d);

// --- isomorphism style checks --------------------------------------------

struct IsoReport {
    bool ok = true;
    std::string detail;  // first failure, or summary counts
};

// product(M, C^-)  ~  (M_- x C)^- : builds both sides and checks the
// structural bijection respects identities and composition within budget.
IsoReport frobenius_check(BackendPtr m, const FiniteCategory& c, const Budget& b);

// hom-set cardinalities of bv_tensor_seq(c,d) against seq(product category)
// recomputed by independent counting.
IsoReport tensor_seq_count_check(const FiniteCategory& c, const FiniteCategory& d, const Budget& b);

// --- access helpers used across modules ----------------------------------

// For seq-style backends: the underlying category and enrichment.
const FiniteCategory* seq_category_of(const Backend& m);
const CMonEnrichment* seq_enrichment_of(const Backend& m);
// For unary backends: the embedded category.
const FiniteCategory* unary_category_of(const Backend& m);
// For product backends: the two factors.
const Backend* product_left_of(const Backend& m);
const Backend* product_right_of(const Backend& m);
// For discrete backends: the monoid.
const MonoidTable* discrete_monoid_of(const Backend& m);
// For finset backends: object size and cap.
std::size_t finset_cap_of(const Backend& m);

}  // namespace mcat
