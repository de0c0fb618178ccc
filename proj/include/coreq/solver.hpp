#pragma once

#include <string>
#include <vector>

#include "coreq/defeasible.hpp"
#include "coreq/diagnostics.hpp"
#include "coreq/ontology.hpp"

namespace coreq {

/// One candidate specification: the chosen compulsory core (fixed elements
/// plus one pick per alternatives group) and the included optional elements.
struct Candidate {
  std::vector<std::string> combo;      // sorted element ids
  std::vector<std::string> optionals;  // sorted element ids

  std::vector<std::string> all() const;
  bool includes(const std::string& id) const;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Stable one-line identity for a candidate, grouped by element kind.
std::string signature(const Model& m, const Candidate& c);

/// A preference kept after meta-preference resolution. Preferences between
/// softgoals are projected onto the quality constraints that approximate
/// their endpoints; projected ones keep the originating attitude id.
struct EffectivePreference {
  std::string id;
  std::string preferred;
  std::string dispreferred;
  bool projected = false;

  friend bool operator==(const EffectivePreference&, const EffectivePreference&) = default;
};

struct ResolvedPreferences {
  std::vector<EffectivePreference> retained;
  // Softgoal preferences that survived conflict resolution, with their
  // original endpoints. Candidates including both endpoints must maintain
  // the ordering over approximating quality constraints (checked per
  // candidate, since the constraints must belong to the candidate).
  std::vector<EffectivePreference> obligations;
  std::vector<std::string> dropped;  // attitude ids removed during resolution
  Diagnostics diagnostics;
};

/// Applies meta-preferences to conflicting preferences, drops optional losers
/// before compulsory ones, reports unresolved conflicts, and projects
/// softgoal preferences through the justified approximations.
ResolvedPreferences resolve_preferences(const Model& m, double approx_threshold = 0.5);

struct SolveOptions {
  long max_candidates = 200000;  // enumeration budget
  bool zj = false;               // classical-entailment mode
  double approx_threshold = 0.5;
  bool parallel = true;              // feasibility checks across threads
  bool use_reference_engine = false; // warrant via the brute-force path
};

/// Ground program for a candidate: facts are the holds literals of its
/// included domain assumptions and plans; rules and priorities come from the
/// model unchanged.
DefeasibleProgram program_for(const Model& m, const Candidate& c);

/// Every consistent choice of the compulsory core, in deterministic order.
/// A combo is dropped when the strict closure over the holds literals of all
/// its members derives a complementary pair.
std::vector<Candidate> enumerate_compulsory_combinations(const Model& m);

/// Combos crossed with the optional subsets that respect the one-per-group
/// cap. Enumeration stops at limit; *exhausted reports whether it finished.
std::vector<Candidate> enumerate_candidates(const Model& m, long limit, bool* exhausted);

struct CandidateCheck {
  bool feasible = false;
  Diagnostics diagnostics;
};

/// Entailment of the included goals and quality constraints, no warranted
/// complement of an included assumption, consistency of the whole candidate,
/// and approximation coverage of the included softgoals.
CandidateCheck check_candidate(const Model& m, const Candidate& c,
                               const SolveOptions& opts = {});

/// Strict partial order between feasible candidates. Compared first on
/// preference satisfaction over the compulsory core, then, between tied
/// candidates, on optional content: more favored optional assumptions, goals
/// and quality constraints is better, fewer disfavored ones is better, and
/// higher preference satisfaction over the optional sets is better.
bool dominates(const Model& m, const ResolvedPreferences& prefs,
               const Candidate& a, const Candidate& b);

struct SolveResult {
  std::vector<Candidate> solutions;  // non-dominated, deterministic order
  Diagnostics diagnostics;
  bool exhaustive = true;  // false when the budget cut enumeration short
  long candidates_checked = 0;
};

SolveResult solve(const Model& m, const SolveOptions& opts = {});

struct VerifyResult {
  bool ok = false;
  Diagnostics diagnostics;
};

/// Independent re-check of a claimed solution: feasibility through the
/// brute-force warrant engine and an exhaustive dominance scan over every
/// enumerable candidate.
VerifyResult verify_solution(const Model& m, const Candidate& c,
                             const SolveOptions& opts = {});

}  // namespace coreq
