#pragma once

#include <string>
#include <vector>

namespace coreq {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
};

enum class Severity { error, warning, note };

std::string to_string(Severity s);

/// One finding from parsing, validation or solving. Diagnostics are values;
/// no operation aborts on a model-level problem.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;     // stable machine-readable code, see codes below
  std::string message;
  std::string subject;  // id of the element/attitude/rule concerned, if any
  SourceSpan span;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& ds);
std::string format(const Diagnostic& d);

// Stable diagnostic codes. Tests assert on these strings; do not rename.
namespace codes {
// parse
inline constexpr const char* syntax = "P_SYNTAX";
inline constexpr const char* duplicate_id = "P_DUPLICATE_ID";
inline constexpr const char* unknown_force = "P_UNKNOWN_FORCE";
// validation
inline constexpr const char* dangling_ref = "V_DANGLING_REF";
inline constexpr const char* bad_atom = "V_BAD_ATOM";
inline constexpr const char* softgoal_quality_space = "V_SOFTGOAL_QUALITY_SPACE";
inline constexpr const char* qc_quality_space = "V_QC_QUALITY_SPACE";
inline constexpr const char* constraint_required = "V_CONSTRAINT_REQUIRED";
inline constexpr const char* quality_forbidden = "V_QUALITY_FORBIDDEN";
inline constexpr const char* params_kind = "V_PARAMS_KIND";
inline constexpr const char* domain_required = "V_DOMAIN_REQUIRED";
inline constexpr const char* insufficient_correlation = "V_INSUFFICIENT_CORRELATION";
inline constexpr const char* correlation_range = "V_CORRELATION_RANGE";
inline constexpr const char* justification_required = "V_JUSTIFICATION_REQUIRED";
inline constexpr const char* approx_kind = "V_APPROX_KIND";
inline constexpr const char* empty_rule_body = "V_EMPTY_RULE_BODY";
inline constexpr const char* mixed_order = "V_MIXED_ORDER";
inline constexpr const char* meta_endpoint = "V_META_ENDPOINT";
inline constexpr const char* meta_cycle = "V_META_CYCLE";
inline constexpr const char* priority_target = "V_PRIORITY_TARGET";
inline constexpr const char* priority_cycle = "V_PRIORITY_CYCLE";
inline constexpr const char* alt_group_size = "V_ALT_GROUP_SIZE";
inline constexpr const char* alt_group_kind = "V_ALT_GROUP_KIND";
// speech-act classification
inline constexpr const char* malformed_utterance = "C_MALFORMED_UTTERANCE";
inline constexpr const char* missing_content = "C_MISSING_CONTENT";
// solver
inline constexpr const char* unsat_compulsory_core = "S_UNSAT_COMPULSORY_CORE";
inline constexpr const char* no_solution = "S_NO_SOLUTION";
inline constexpr const char* budget_exceeded = "S_BUDGET_EXCEEDED";
inline constexpr const char* unresolved_conflict = "S_UNRESOLVED_CONFLICT";
inline constexpr const char* c1_inconsistent = "C1_INCONSISTENT_BASE";
inline constexpr const char* c1_unwarranted = "C1_UNWARRANTED";
inline constexpr const char* c1_assumption_violated = "C1_ASSUMPTION_VIOLATED";
inline constexpr const char* c4_uncovered_softgoal = "C4_UNCOVERED_SOFTGOAL";
inline constexpr const char* c5_unprojected_preference = "C5_UNPROJECTED_PREFERENCE";
inline constexpr const char* mode_not_applicable = "S_MODE_NOT_APPLICABLE";
// cli
inline constexpr const char* io_error = "IO_ERROR";
inline constexpr const char* unknown_literal = "E_UNKNOWN_LITERAL";
}  // namespace codes

}  // namespace coreq
