#pragma once

#include <vector>

#include "coreq/defeasible.hpp"

namespace coreq::naive {

/// Reference warrant implementation, written independently of
/// DefeasibleEngine: supports come from brute-force subset enumeration over
/// the defeasible rules and the dialectical recursion is restated from
/// scratch. Exponential in the defeasible rule count; used for verification
/// and as the baseline in benchmarks.
std::vector<Argument> all_arguments(const DefeasibleProgram& p);
std::vector<Argument> arguments_for(const DefeasibleProgram& p, const Literal& l);
bool warranted(const DefeasibleProgram& p, const Literal& l);
std::vector<Literal> consequences(const DefeasibleProgram& p);

}  // namespace coreq::naive
