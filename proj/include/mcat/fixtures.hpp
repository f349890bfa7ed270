#pragma once

// Small concrete inputs shared by the tests and the command line: a few
// finite categories, monoids and enriched structures, plus a catalog of
// ready-made backends keyed by short names.

#include <string>
#include <utility>
#include <vector>

#include "mcat/constructions.hpp"

namespace mcat {

// One object, only its identity.
FiniteCategory terminal_category();

// Two objects a, b and a single arrow f : a -> b besides the identities.
FiniteCategory walking_arrow();

// The two-element group as a monoid table.
MonoidTable z2_monoid();

// The two-element group as a one-object category.
FiniteCategory z2_category();

// One object, arrows 0 and 1 composing by multiplication, enriched by
// truth-value addition. The identity is 1, the zero arrow is 0.
PreadditiveCategory boolean_rig();

// The walking arrow under its join tensor with unit a, braided trivially.
StrictMonoidalData join_semilattice();

// Backend catalog entries: name plus a one-line description.
std::vector<std::pair<std::string, std::string>> fixture_catalog();

// Build a catalog backend by name; InputError on unknown names. The budget
// feeds the entries assembled from enumerated structure.
BackendPtr fixture(const std::string& name, const Budget& b);

}  // namespace mcat
