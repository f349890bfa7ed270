#pragma once

// Law sweeps over a backend within a budget. Each validator enumerates
// instances in a fixed deterministic order (signatures graded by arity then
// lexicographic, arrows in hom order, maps lexicographic), so the first
// violation found is the minimal counterexample under that order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcat/backend.hpp"

namespace mcat {

enum class Outcome {
    pass,              // no violation among the instances checked
    counterexample,    // a concrete violation was found
    budget_exhausted,  // the budget excluded every instance of the law
};

// A reproducible violation. `arrows` and `maps` hold the instance data in a
// law-specific layout; replay() rebuilds both sides from them. `sig` is set
// by the hom-level laws, which quantify over signatures rather than arrows.
struct Counterexample {
    std::string law;
    Signature sig;
    std::vector<Arrow> arrows;
    std::vector<FamilyMap> maps;
    Arrow lhs;
    Arrow rhs;
    std::string note;
};

struct LawResult {
    std::string law;
    Outcome outcome = Outcome::pass;
    // instances actually evaluated; skipped counts candidates the budget
    // excluded (arity or depth over cap, or the per-law instance cap).
    std::uint64_t instances = 0;
    std::uint64_t skipped = 0;
    bool truncated = false;
    std::optional<Counterexample> witness;
};

struct ValidationReport {
    std::string backend;
    Budget budget;
    std::vector<LawResult> laws;

    bool ok() const;
    bool any_truncated() const;
    const Counterexample* first_witness() const;
};

// Plain multicategory laws: hom enumeration sanity, identity signatures,
// composite signatures, left and right unit, associativity.
ValidationReport validate_multicat(const Backend& m, const Budget& b);

// Symmetric action laws: identity action, composition of actions, and both
// compatibilities with multicomposition.
ValidationReport validate_symmetric(const Backend& m, const Budget& b);

// Cartesian action laws over arbitrary position maps, plus independence of
// the action from the chosen factorization. Requires m.cartesian().
ValidationReport validate_cartesian(const Backend& m, const Budget& b);

// Recompute the violation from its witness data. True when the failure
// reproduces (sides differ again, or the action throws again).
bool replay(const Backend& m, const Counterexample& ce, const Budget& b);

}  // namespace mcat
