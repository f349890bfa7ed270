#pragma once

// The backend interface every concrete multicategory implements, plus the
// generic cartesian action built from the primitive ops. Backends are
// immutable once constructed and all enumeration orders are deterministic.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcat/base.hpp"
#include "mcat/family_map.hpp"

namespace mcat {

enum class BackendKind {
    table,       // explicit arrow/composition tables
    seq,         // tuples of category arrows, optionally with hom addition
    unary,       // category embedded at arity one
    monoidal,    // closed strict tensor tables
    finset,      // skeletal finite sets, function-table homs
    natrig,      // one object, tuples of naturals
    freepre,     // tuples of arrow multisets
    discrete,    // monoid elements, subsingleton homs
    product,     // componentwise pair of backends
    ihom,        // transforms between enumerated functors
    seqexp,      // families indexed by a category, unary-naturality filter
    cmon,        // commutative monoids with multiplicative arrows
    sub,         // full restriction of another backend to chosen objects
};

class Backend {
public:
    virtual ~Backend() = default;

    virtual BackendKind kind() const = 0;
    virtual std::string describe() const = 0;

    virtual std::size_t object_count() const = 0;
    virtual std::string object_name(ObjId a) const = 0;

    // Deterministic, duplicate-free enumeration of one hom-set, truncated
    // at max_enum arrows.
    virtual HomSet hom(const Signature& sig, std::uint64_t max_enum) const = 0;

    virtual Arrow identity(ObjId a) const = 0;

    // f after (g_0, ..., g_{n-1}); gs.size() == f.arity(), cod g_i == dom_i f.
    virtual Arrow compose(const Arrow& f, std::span<const Arrow> gs) const = 0;

    // Action of a bijective family map whose source is f's domain.
    virtual Arrow sym_act(const FamilyMap& s, const Arrow& f) const = 0;

    virtual bool cartesian() const = 0;

    // Merge equal adjacent domain positions pos, pos+1. Cartesian only.
    virtual Arrow contract(const Arrow& f, std::size_t pos) const;

    // Insert an unused domain position carrying object x at pos. Cartesian only.
    virtual Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const;

    // Designated representing arrow for a domain family, where the backend
    // carries a representability structure. Empty when none is designated.
    virtual std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const;

    // Short display form, stable across runs.
    virtual std::string arrow_label(const Arrow& f) const;
};

using BackendPtr = std::shared_ptr<const Backend>;

// Checked wrappers enforcing the budget/object preconditions at the API edge.
HomSet hom_checked(const Backend& m, const Signature& sig, const Budget& b);
void check_signature(const Backend& m, const Signature& sig);
void check_composable(const Backend& m, const Arrow& f, std::span<const Arrow> gs);

// Action of an arbitrary family map, computed as sym_act of the factored
// bijection followed by per-block contractions and weakenings. Requires a
// cartesian backend unless the map is bijective.
Arrow cart_act(const Backend& m, const FamilyMap& s, const Arrow& f);

// Same, but along a caller-supplied factorization; used to validate that
// the action does not depend on the factorization chosen.
Arrow cart_act_via(const Backend& m, const Factorization& f, const Arrow& arrow);

// All domain families over m's objects with size <= max_arity, graded then
// lexicographic. With codomains appended this enumerates signatures.
std::vector<std::vector<ObjId>> all_families(const Backend& m, std::size_t max_arity);
std::vector<Signature> all_signatures(const Backend& m, std::size_t max_arity);

// Render "A,B -> C" with backend object names.
std::string signature_label(const Backend& m, const Signature& sig);

// Memoizing hom-set lookup. Law sweeps revisit the same signatures many
// times; the cache keeps enumeration cost proportional to distinct hom sets.
class HomCache {
  public:
    HomCache(const Backend& m, const Budget& b) : m_(m), b_(b) {}

    const Backend& backend() const { return m_; }
    const Budget& budget() const { return b_; }
    const HomSet& get(const Signature& sig);

    // True once any cached enumeration came back truncated.
    bool truncated() const { return truncated_; }

  private:
    const Backend& m_;
    const Budget& b_;
    bool truncated_ = false;
    std::map<Signature, HomSet> cache_;
};

// Enumerate arrow tuples (g_1, ..., g_k) with cod(g_i) = cods[i] and total
// domain arity <= arity_cap. Domains range over all object families. Order is
// deterministic: slot by slot, each slot graded by arity then lexicographic.
// The callback returns false to stop early; the return value mirrors that.
bool each_arrow_tuple(HomCache& h, const std::vector<ObjId>& cods,
                      std::size_t arity_cap,
                      const std::function<bool(std::span<const Arrow>)>& fn);

}  // namespace mcat
