#pragma once

// Shared value types for the multicategory engine: object ids, signatures,
// arrows, budgets and the error taxonomy used across the library and the CLI.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcat {

using ObjId = std::uint32_t;

// A hom-set address: ordered domain family plus codomain.
struct Signature {
    std::vector<ObjId> domain;
    ObjId codomain = 0;

    std::size_t arity() const { return domain.size(); }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.codomain == b.codomain && a.domain == b.domain;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
    // Order: arity first, then domain, then codomain. Keeps sweeps graded.
    friend bool operator<(const Signature& a, const Signature& b) {
        if (a.domain.size() != b.domain.size()) return a.domain.size() < b.domain.size();
        if (a.domain != b.domain) return a.domain < b.domain;
        return a.codomain < b.codomain;
    }
};

// An arrow is its signature plus a backend-specific canonical code.
// Backends must emit codes so that structural equality coincides with
// arrow equality; comparisons never need a backend callback.
struct Arrow {
    Signature sig;
    std::vector<std::uint64_t> code;

    std::size_t arity() const { return sig.arity(); }

    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.sig == b.sig && a.code == b.code;
    }
    friend bool operator!=(const Arrow& a, const Arrow& b) { return !(a == b); }
    friend bool operator<(const Arrow& a, const Arrow& b) {
        if (!(a.sig == b.sig)) return a.sig < b.sig;
        return a.code < b.code;
    }
};

struct HomSet {
    std::vector<Arrow> arrows;
    bool truncated = false;  // enumeration hit the cap before exhausting the hom-set
};

// Caps for every quantifier the validators and searches range over.
struct Budget {
    std::size_t max_arity = 3;   // widest domain family considered
    std::size_t max_depth = 2;   // nesting of compositions in law checks
    std::uint64_t max_enum = 10000;  // cap per hom enumeration and per law sweep
};

// input data broken (unknown object, malformed table, bad signature)
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// operation cannot finish inside the budget (infinite enumeration, no
// finite generating scheme); distinct from a law counterexample
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// backend lacks the requested structure (cartesian op on a symmetric-only
// backend, non-bijective action where only bijections act)
struct UnsupportedAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_input(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

}  // namespace mcat
