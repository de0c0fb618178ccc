#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coreq/ontology.hpp"

namespace coreq {

enum class Force {
  assertive,
  declarative,
  representative_declarative,
  directive,
  commissive,
  expressive
};

enum class Modality { belief, desire, intention, attitude };

enum class Connective { conjunction, disjunction, if_then };

std::string to_string(Force);
std::string to_string(Modality);
std::string to_string(Connective);
std::optional<Force> force_from_string(const std::string&);

/// Payload of an assertive, directive or commissive utterance.
struct PropositionalContent {
  Literal holds;
  std::string quality;          // optional quality reference
  std::string constraint_expr;  // optional comparator text
  std::vector<std::string> params;

  friend bool operator==(const PropositionalContent&, const PropositionalContent&) = default;
};

/// Expressive payload evaluating one element.
struct EvaluationContent {
  EvaluationSign sign = EvaluationSign::favor;
  std::string target;

  friend bool operator==(const EvaluationContent&, const EvaluationContent&) = default;
};

/// Expressive payload ordering two elements, or two preferences when
/// over_preferences is set.
struct PreferenceContent {
  std::string preferred;
  std::string dispreferred;
  bool over_preferences = false;

  friend bool operator==(const PreferenceContent&, const PreferenceContent&) = default;
};

using ContentPayload = std::variant<PropositionalContent, EvaluationContent, PreferenceContent>;

/// A pre-annotated stakeholder utterance. Leaves carry a force and content;
/// compounds carry a connective and child ids.
struct Utterance {
  std::string id;
  std::string text;
  std::optional<Force> force;
  std::optional<ContentPayload> content;
  std::optional<Connective> connective;
  std::vector<std::string> children;
  SourceSpan span;

  bool is_leaf() const { return !connective.has_value(); }
};

struct UtteranceSet {
  std::vector<Utterance> utterances;
  const Utterance* find(const std::string& id) const;
};

/// Content tagged with the mental-state modality its force prescribes.
struct ModalContent {
  Modality modality = Modality::belief;
  ContentPayload content;
  std::string source;  // utterance id
};

struct DecomposeResult {
  std::vector<const Utterance*> leaves;  // document order
  Diagnostics diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

/// Flattens connective structure to the leaf utterances, in document order.
/// Connectives are provenance only; their logical import is re-expressed as
/// model rules by the modeler.
DecomposeResult decompose(const Utterance& u, const UtteranceSet& set);

/// assertive / declarative / representative declarative -> belief,
/// directive -> desire, commissive -> intention, expressive -> attitude.
ModalContent modalize(const Utterance& leaf);

/// Lookup context for classification: quality registry plus the kinds of
/// already-known elements and preference ids, for attitude payload checks.
struct ClassifyEnv {
  std::vector<QualityType> qualities;
  std::vector<std::pair<std::string, ElementKind>> element_kinds;
  std::vector<std::string> preference_ids;

  std::optional<ElementKind> kind_of(const std::string& id) const;
  bool is_preference(const std::string& id) const;
};

struct ClassifiedInstance {
  std::optional<Element> element;
  std::optional<Attitude> attitude;
  Diagnostics diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

/// Maps modalized content to one ontology instance: belief -> domain
/// assumption, desire -> the directive trichotomy, intention -> plan,
/// attitude -> evaluation or preference.
ClassifiedInstance classify(const ModalContent& mc, const ClassifyEnv& env);

/// Runs decompose / modalize / classify over a whole utterance set against a
/// registry model, producing elements and attitudes. Elements adopt the id of
/// their source utterance. Expressives are classified after the rest so they
/// can reference elements introduced by the same document.
struct PipelineResult {
  std::vector<Element> elements;
  std::vector<Attitude> attitudes;
  Diagnostics diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

PipelineResult classify_utterances(const UtteranceSet& set, const Model& registry);

}  // namespace coreq
