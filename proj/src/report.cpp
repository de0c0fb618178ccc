#include "coreq/report.hpp"

namespace coreq {

Json to_json(const Diagnostic& d) {
  Json j;
  j["severity"] = to_string(d.severity);
  j["code"] = d.code;
  j["message"] = d.message;
  if (!d.subject.empty()) j["subject"] = d.subject;
  if (!d.span.file.empty()) {
    j["file"] = d.span.file;
    j["line"] = d.span.line;
    j["column"] = d.span.column;
  }
  return j;
}

Json to_json(const Diagnostics& ds) {
  Json arr = Json::array();
  for (const Diagnostic& d : ds) arr.push_back(to_json(d));
  return arr;
}

Json candidate_json(const Model& m, const Candidate& c) {
  Json j;
  j["signature"] = signature(m, c);
  j["combo"] = c.combo;
  j["optionals"] = c.optionals;
  return j;
}

Json derivation_json(const Derivation& d) {
  Json j;
  j["literal"] = to_string(d.lit);
  if (!d.rule.empty()) j["rule"] = d.rule;
  if (!d.children.empty()) {
    Json kids = Json::array();
    for (const Derivation& c : d.children) kids.push_back(derivation_json(c));
    j["children"] = kids;
  }
  return j;
}

Json dialectical_json(const DialecticalNode& n) {
  Json j;
  j["conclusion"] = to_string(n.argument.conclusion);
  j["support"] = n.argument.support;
  j["status"] = n.undefeated ? "undefeated" : "defeated";
  j["derivation"] = derivation_json(n.argument.tree);
  Json kids = Json::array();
  for (const DialecticalNode& c : n.children) kids.push_back(dialectical_json(c));
  j["defeaters"] = kids;
  return j;
}

Json explanation_json(const Explanation& e) {
  Json j;
  j["query"] = to_string(e.query);
  j["warranted"] = e.warranted;
  Json trees = Json::array();
  for (const DialecticalNode& n : e.trees) trees.push_back(dialectical_json(n));
  j["trees"] = trees;
  return j;
}

Json solve_json(const Model& m, const SolveResult& r) {
  Json j;
  j["exhaustive"] = r.exhaustive;
  j["candidates_checked"] = r.candidates_checked;
  Json sols = Json::array();
  for (const Candidate& c : r.solutions) sols.push_back(candidate_json(m, c));
  j["solutions"] = sols;
  return j;
}

Json report_shell(const std::string& command) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

std::string write_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace coreq
