#pragma once

#include <set>
#include <string>
#include <vector>

#include "coreq/literal.hpp"
#include "coreq/ontology.hpp"

namespace coreq {

/// Ground program for the non-monotonic consequence engine: facts, strict and
/// defeasible rules, and an explicit priority relation over defeasible rules.
struct DefeasibleProgram {
  std::vector<Literal> facts;
  std::vector<Rule> rules;
  std::vector<std::pair<std::string, std::string>> priorities;  // hi > lo

  std::vector<std::string> atoms() const;  // sorted, deduped
};

/// Forward-chaining closure of the facts under all strict rules plus the
/// selected defeasible rules.
std::set<Literal> closure(const DefeasibleProgram& p,
                          const std::set<std::string>& defeasible_subset);
std::set<Literal> strict_closure(const DefeasibleProgram& p);

/// True when the set contains no complementary pair.
bool consistent(const std::set<Literal>& lits);

/// Derivation tree in canonical form. The canonical choice at each node:
/// a fact leaf when available, otherwise strict rules by ascending id,
/// otherwise allowed defeasible rules by ascending id; bodies are expanded
/// left to right and no literal repeats along any root-to-leaf path. The
/// first tree found by that backtracking order is unique, so independent
/// implementations agree on it.
struct Derivation {
  Literal lit;
  std::string rule;  // applied rule id; empty marks a fact leaf
  std::vector<Derivation> children;
};

/// An argument: a minimal set of defeasible rules that, together with the
/// facts and strict rules, consistently derives the conclusion.
struct Argument {
  Literal conclusion;
  std::vector<std::string> support;  // sorted defeasible rule ids
  Derivation tree;                   // canonical derivation over the support

  friend bool operator==(const Argument& a, const Argument& b) {
    return a.conclusion == b.conclusion && a.support == b.support;
  }
};

/// One place an argument can be attacked: a conclusion appearing in its
/// derivation, with the defeasible rules of the subtree deriving it. For a
/// literal derived at several nodes the first preorder occurrence counts.
struct AttackPoint {
  Literal at;
  std::vector<std::string> sub_support;  // sorted
};

std::vector<AttackPoint> attack_points(const Argument& a);

/// Dialectical-tree node as reported by explain().
struct DialecticalNode {
  Argument argument;
  bool undefeated = false;
  std::vector<DialecticalNode> children;
};

struct Explanation {
  Literal query;
  bool warranted = false;
  std::vector<DialecticalNode> trees;  // one per argument for the query
};

/// Warrant engine. Construction enumerates the argument universe by backward
/// chaining and precomputes the defeat relation; queries then walk
/// dialectical trees in which no argument repeats along a line.
class DefeasibleEngine {
 public:
  explicit DefeasibleEngine(DefeasibleProgram p);

  const DefeasibleProgram& program() const { return prog_; }
  bool base_consistent() const { return base_consistent_; }

  const std::vector<Argument>& arguments() const { return args_; }
  std::vector<const Argument*> arguments_for(const Literal& l) const;

  bool warranted(const Literal& l) const;

  /// All warranted literals over the program alphabet, sorted. The first
  /// form splits queries across threads when built with OpenMP; the serial
  /// form is the reference path and always runs single threaded.
  std::vector<Literal> consequences() const;
  std::vector<Literal> consequences_serial() const;

  Explanation explain(const Literal& l) const;

  /// True when rule a is above rule b in the transitive priority order.
  bool higher_priority(const std::string& a, const std::string& b) const;

 private:
  bool defeats(int attacker, int target) const;
  bool undefeated(int arg, std::vector<int>& line) const;
  DialecticalNode build_node(int arg, std::vector<int>& line) const;

  DefeasibleProgram prog_;
  bool base_consistent_ = true;
  std::set<std::pair<std::string, std::string>> priority_closure_;
  std::vector<Argument> args_;
  std::vector<std::vector<AttackPoint>> points_;   // per argument
  std::vector<std::vector<int>> defeaters_;        // defeaters_[i]: j defeats i
};

}  // namespace coreq
