#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coreq/diagnostics.hpp"
#include "coreq/literal.hpp"

namespace coreq {

enum class MeasurementLevel { nominal, ordinal, interval, ratio };
enum class QualityStructure { well_defined_shared, subjective_ill_defined };
enum class ElementKind { domain_assumption, goal, quality_constraint, softgoal, plan };
enum class Optionality { compulsory, optional };
enum class RuleStrength { strict, defeasible };
enum class AttitudeForm { evaluation, preference, meta_preference };
enum class EvaluationSign { favor, disfavor };

std::string to_string(MeasurementLevel);
std::string to_string(QualityStructure);
std::string to_string(ElementKind);
std::string to_string(Optionality);
std::string to_string(AttitudeForm);
std::string to_string(EvaluationSign);

/// A measurable quality and the structure of its value space.
struct QualityType {
  std::string id;
  MeasurementLevel level = MeasurementLevel::nominal;
  QualityStructure structure = QualityStructure::subjective_ill_defined;
  std::string domain;  // value-range description; required for shared spaces

  SourceSpan span;

  friend bool operator==(const QualityType& a, const QualityType& b) {
    return a.id == b.id && a.level == b.level && a.structure == b.structure &&
           a.domain == b.domain;
  }
};

/// One classified concept instance: domain assumption, goal, quality
/// constraint, softgoal or plan.
struct Element {
  std::string id;
  ElementKind kind = ElementKind::goal;
  Optionality optionality = Optionality::compulsory;
  Literal holds;                 // atom made true when the element obtains
  std::string quality;           // quality id; empty = absent
  std::string constraint_expr;   // comparator text; quality constraints only
  std::vector<std::string> params;  // goal parameter names, metadata only
  std::string source_utterance;

  // Set during model build: explicit marker from the source text, if any.
  // When absent, optionality is derived from evaluation attitudes.
  std::optional<Optionality> declared_optionality;
  // True when some attitude evaluates this element with sign disfavor.
  bool disfavored = false;

  SourceSpan span;

  friend bool operator==(const Element& a, const Element& b) {
    return a.id == b.id && a.kind == b.kind && a.optionality == b.optionality &&
           a.holds == b.holds && a.quality == b.quality &&
           a.constraint_expr == b.constraint_expr && a.params == b.params &&
           a.disfavored == b.disfavored;
  }
};

/// jApprox: a justified, sufficiently correlated mapping from a softgoal's
/// quality space to a quality constraint's well-defined one.
struct JustifiedApproximation {
  std::string softgoal;
  std::string qc;
  double correlation = 0.0;
  std::string justification;

  SourceSpan span;

  friend bool operator==(const JustifiedApproximation& a, const JustifiedApproximation& b) {
    return a.softgoal == b.softgoal && a.qc == b.qc &&
           a.correlation == b.correlation && a.justification == b.justification;
  }
};

/// An evaluation of a single element, a preference between two same-kind
/// elements, or a preference between two preferences.
struct Attitude {
  std::string id;
  AttitudeForm form = AttitudeForm::evaluation;
  Optionality optionality = Optionality::compulsory;

  // evaluation
  std::string target;
  EvaluationSign sign = EvaluationSign::favor;

  // preference / meta_preference
  std::string preferred;
  std::string dispreferred;

  SourceSpan span;

  friend bool operator==(const Attitude& a, const Attitude& b) {
    return a.id == b.id && a.form == b.form && a.optionality == b.optionality &&
           a.target == b.target && a.sign == b.sign && a.preferred == b.preferred &&
           a.dispreferred == b.dispreferred;
  }
};

struct Rule {
  std::string id;
  std::vector<Literal> body;
  Literal head;
  RuleStrength strength = RuleStrength::strict;

  SourceSpan span;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.id == b.id && a.body == b.body && a.head == b.head && a.strength == b.strength;
  }
};

/// The full set of declared ontology elements, rules, qualities,
/// approximations and attitudes. Immutable after validation.
struct Model {
  std::vector<QualityType> qualities;
  std::vector<Element> elements;
  std::vector<JustifiedApproximation> approximations;
  std::vector<Attitude> attitudes;
  std::vector<Rule> rules;
  // declared pairs higher > lower over defeasible rule ids
  std::vector<std::pair<std::string, std::string>> priorities;
  // mutually-exclusive element-id groups
  std::vector<std::vector<std::string>> alternatives;

  const QualityType* find_quality(const std::string& id) const;
  const Element* find_element(const std::string& id) const;
  const Attitude* find_attitude(const std::string& id) const;
  const Rule* find_rule(const std::string& id) const;
};

/// Fills Element::optionality and Element::disfavored from declared markers
/// and evaluation attitudes: an explicit marker wins; otherwise any
/// evaluation makes the target optional, and compulsory is the default.
void resolve_optionality(Model& m);

struct ValidateOptions {
  double approx_threshold = 0.5;  // minimum |correlation| for jApprox
};

/// Checks every type invariant; returns diagnostics, never throws.
Diagnostics validate_model(const Model& m, const ValidateOptions& opts = {});

/// The per-kind compulsory/optional partition of a model.
struct OptionalityPartition {
  std::vector<std::string> assumptions_c, assumptions_o;
  std::vector<std::string> goals_c, goals_o;
  std::vector<std::string> qcs_c, qcs_o;
  std::vector<std::string> softgoals_c, softgoals_o;
  std::vector<std::string> plans_c, plans_o;
  std::vector<std::string> attitudes_c, attitudes_o;
};

OptionalityPartition partition_by_optionality(const Model& m);

/// Directive content about to be classified by the goal / quality constraint
/// / softgoal trichotomy.
struct DirectiveContent {
  Literal holds;
  std::string quality;          // empty = no quality referenced
  std::string constraint_expr;  // empty = absent
};

struct TrichotomyResult {
  std::optional<ElementKind> kind;
  Diagnostics diagnostics;
  bool ok() const { return kind.has_value(); }
};

/// Goal iff no quality is referenced; quality constraint iff the quality
/// space is well defined and shared and a constraint expression is present;
/// softgoal iff the space is subjective or ill defined.
TrichotomyResult classify_directive_content(const DirectiveContent& content,
                                            const std::vector<QualityType>& registry);

/// Structural model equality: same declarations up to ordering; source spans
/// and explicit-vs-derived optionality markers are not compared.
bool structurally_equal(const Model& a, const Model& b);

}  // namespace coreq
