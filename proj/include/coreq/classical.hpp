#pragma once

#include "coreq/defeasible.hpp"

namespace coreq {

/// Classical reading of a program: facts are unit clauses and every rule,
/// strict or defeasible alike, is the material implication body -> head.
/// Entailment is checked by refutation with a small DPLL procedure, so case
/// splits and contraposition count, unlike the rule-directed closure.
bool classically_consistent(const DefeasibleProgram& p);
bool classically_entails(const DefeasibleProgram& p, const Literal& l);

}  // namespace coreq
