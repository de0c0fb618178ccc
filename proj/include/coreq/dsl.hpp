#pragma once

#include <string>

#include "coreq/ontology.hpp"
#include "coreq/speech_acts.hpp"

namespace coreq {

struct ParseModelResult {
  Model model;
  Diagnostics diagnostics;  // syntax and validation findings, with spans
  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses the model format. On success the returned model has optionality
/// resolved and validate_model has been applied; its findings are appended
/// to the diagnostics. Deterministic: identical bytes give identical output.
ParseModelResult parse_model(const std::string& text, const std::string& file = "<input>",
                             const ValidateOptions& opts = {});

/// Canonical text form. parse_model(render_model(m)) is structurally equal
/// to m; declarations are emitted in a normalized order.
std::string render_model(const Model& m);

struct ParseUtterancesResult {
  UtteranceSet set;
  Diagnostics diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses the annotated-utterance format.
ParseUtterancesResult parse_utterances(const std::string& text,
                                       const std::string& file = "<input>");

}  // namespace coreq
