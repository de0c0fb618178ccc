#pragma once

#include <compare>
#include <string>
#include <vector>

namespace coreq {

/// A ground propositional literal: an atom or its strong negation (~atom).
struct Literal {
  std::string atom;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
};

inline Literal complement(const Literal& l) { return Literal{l.atom, !l.negated}; }

inline std::string to_string(const Literal& l) { return l.negated ? "~" + l.atom : l.atom; }

/// Identifier check used for atoms and declaration ids: lowercase start,
/// then letters, digits or underscores.
bool is_valid_atom(const std::string& s);

}  // namespace coreq
