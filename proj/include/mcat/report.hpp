#pragma once

// Structured report documents and the named check suites behind the
// command line. Objects serialize with sorted keys and carry no clocks or
// machine identifiers, so identical inputs render byte-identical output.

#include <string>
#include <vector>

#include "json.hpp"

#include "mcat/constructions.hpp"
#include "mcat/validate.hpp"

namespace mcat {

inline constexpr int kSchemaVersion = 1;

// process exit semantics, shared by every subcommand
inline constexpr int kExitPass = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

nlohmann::json budget_json(const Budget& b);
nlohmann::json arrow_json(const Arrow& f);
Arrow arrow_from_json(const nlohmann::json& j);
nlohmann::json counterexample_json(const Counterexample& ce);
Counterexample counterexample_from_json(const nlohmann::json& j);
nlohmann::json report_json(const ValidationReport& rep);
nlohmann::json iso_json(const std::string& title, const IsoReport& rep);

// kExitCounterexample when any law failed, else kExitBudget when a law
// had every instance excluded, else kExitPass.
int exit_code_of(const ValidationReport& rep);

// Human-oriented rendering; the layout is unstable across versions.
std::string report_text(const ValidationReport& rep);

struct TheoremOutcome {
    nlohmann::json doc;
    int exit_code = kExitPass;
};

// Suite ids in running order.
std::vector<std::string> theorem_ids();

// Runs one named suite over the built-in fixtures. InputError on unknown
// ids; BudgetError surfaces from the underlying sweeps.
TheoremOutcome run_theorem(const std::string& id, const Budget& b);

}  // namespace mcat
