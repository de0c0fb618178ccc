#pragma once

#include <random>

#include "coreq/defeasible.hpp"
#include "coreq/ontology.hpp"

namespace coreq {

/// Seeded generators used by the benchmark tool and the test suites.
/// Deterministic for a fixed seed and parameter set.

struct ProgramGenOptions {
  int atoms = 8;
  int facts = 3;
  int strict_rules = 4;
  int defeasible_rules = 8;
  int priorities = 4;
  int max_body = 2;
};

DefeasibleProgram random_program(std::mt19937_64& rng, const ProgramGenOptions& o = {});

/// Definite models: positive atoms everywhere, strict rules only, no
/// attitudes, softgoals, optional elements or alternatives groups. On this
/// fragment the rule-directed closure and classical entailment coincide.
struct DefiniteModelGenOptions {
  int atoms = 8;
  int assumptions = 2;
  int plans = 2;
  int goals = 3;
  int rules = 6;
  int max_body = 2;
};

Model random_definite_model(std::mt19937_64& rng, const DefiniteModelGenOptions& o = {});

/// Full-feature models exercising every declaration form of the model
/// language: qualities of both structures, all five element kinds, rules of
/// both strengths, priorities, approximations, the three attitude forms and
/// alternatives groups. Always passes validate_model.
struct ModelGenOptions {
  int assumptions = 2;
  int goals = 3;
  int qcs = 2;
  int softgoals = 2;
  int plans = 3;
  int rules = 5;
  int evaluations = 2;
  int preferences = 2;
  bool meta = true;
  bool alternatives = true;
};

Model random_model(std::mt19937_64& rng, const ModelGenOptions& o = {});

}  // namespace coreq
