#pragma once

#include <string>

#include "json.hpp"

#include "coreq/defeasible.hpp"
#include "coreq/solver.hpp"

namespace coreq {

inline constexpr const char* kVersion = "0.3.0";

using Json = nlohmann::ordered_json;

// Key order is fixed by construction order, so serialized reports are byte
// stable across runs.
Json to_json(const Diagnostic& d);
Json to_json(const Diagnostics& ds);
Json candidate_json(const Model& m, const Candidate& c);
Json derivation_json(const Derivation& d);
Json dialectical_json(const DialecticalNode& n);
Json explanation_json(const Explanation& e);
Json solve_json(const Model& m, const SolveResult& r);

/// Common envelope: version and the subcommand that produced the report.
Json report_shell(const std::string& command);

std::string write_text(const Json& j);

}  // namespace coreq
