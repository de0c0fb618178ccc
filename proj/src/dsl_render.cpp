#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "coreq/dsl.hpp"

namespace coreq {
namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Shortest form that survives a parse round trip.
std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  if (std::strtod(buf, nullptr) == v) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string element_keyword(ElementKind k) {
  switch (k) {
    case ElementKind::domain_assumption: return "assumption";
    case ElementKind::goal: return "goal";
    case ElementKind::quality_constraint: return "qc";
    case ElementKind::softgoal: return "softgoal";
    case ElementKind::plan: return "plan";
  }
  return "goal";
}

template <typename T, typename Key>
std::vector<T> sorted_by(std::vector<T> v, Key key) {
  std::stable_sort(v.begin(), v.end(),
                   [&](const T& a, const T& b) { return key(a) < key(b); });
  return v;
}

void render_element(std::ostringstream& os, const Element& e) {
  os << element_keyword(e.kind) << ' ' << e.id << ' ' << to_string(e.optionality)
     << " { holds: " << to_string(e.holds);
  if (!e.quality.empty()) os << ", quality: " << e.quality;
  if (!e.constraint_expr.empty()) os << ", constraint: " << quoted(e.constraint_expr);
  if (!e.params.empty()) {
    os << ", params: [";
    for (size_t i = 0; i < e.params.size(); ++i)
      os << (i ? ", " : "") << e.params[i];
    os << ']';
  }
  if (!e.source_utterance.empty()) os << ", source: " << e.source_utterance;
  os << " }\n";
}

}  // namespace

std::string render_model(const Model& m) {
  std::ostringstream os;
  os << "// coreq model\n";

  auto qualities = sorted_by(m.qualities, [](const QualityType& q) { return q.id; });
  if (!qualities.empty()) os << '\n';
  for (const auto& q : qualities) {
    os << "quality " << q.id << " { level: " << to_string(q.level)
       << ", structure: " << to_string(q.structure);
    if (!q.domain.empty()) os << ", domain: " << quoted(q.domain);
    os << " }\n";
  }

  auto elements = sorted_by(m.elements, [](const Element& e) { return e.id; });
  for (ElementKind k : {ElementKind::domain_assumption, ElementKind::goal,
                        ElementKind::quality_constraint, ElementKind::softgoal,
                        ElementKind::plan}) {
    bool any = false;
    for (const auto& e : elements) {
      if (e.kind != k) continue;
      if (!any) os << '\n';
      any = true;
      render_element(os, e);
    }
  }

  auto groups = m.alternatives;
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end());
  if (!groups.empty()) os << '\n';
  for (const auto& g : groups) {
    os << "alternatives { ";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? " | " : "") << g[i];
    os << " }\n";
  }

  auto rules = sorted_by(m.rules, [](const Rule& r) { return r.id; });
  if (!rules.empty()) os << '\n';
  for (const auto& r : rules) {
    os << "rule " << r.id << ": ";
    for (size_t i = 0; i < r.body.size(); ++i)
      os << (i ? " & " : "") << to_string(r.body[i]);
    os << (r.strength == RuleStrength::strict ? " -> " : " => ")
       << to_string(r.head) << '\n';
  }

  auto prios = m.priorities;
  std::sort(prios.begin(), prios.end());
  if (!prios.empty()) os << '\n';
  for (const auto& [hi, lo] : prios) os << "priority " << hi << " > " << lo << '\n';

  auto approxes = sorted_by(m.approximations, [](const JustifiedApproximation& a) {
    return a.softgoal + '\0' + a.qc;
  });
  if (!approxes.empty()) os << '\n';
  for (const auto& a : approxes) {
    os << "approx " << a.softgoal << " <- " << a.qc
       << " { correlation: " << format_real(a.correlation)
       << ", justification: " << quoted(a.justification) << " }\n";
  }

  auto attitudes = sorted_by(m.attitudes, [](const Attitude& a) { return a.id; });
  for (AttitudeForm f : {AttitudeForm::evaluation, AttitudeForm::preference,
                         AttitudeForm::meta_preference}) {
    bool any = false;
    for (const auto& a : attitudes) {
      if (a.form != f) continue;
      if (!any) os << '\n';
      any = true;
      if (f == AttitudeForm::evaluation) {
        os << "evaluate " << a.id << ' ' << to_string(a.optionality) << ": "
           << to_string(a.sign) << ' ' << a.target << '\n';
      } else {
        os << "prefer " << a.id << ' ' << to_string(a.optionality) << ": "
           << (f == AttitudeForm::meta_preference ? "pref " : "") << a.preferred
           << " > " << a.dispreferred << '\n';
      }
    }
  }

  return os.str();
}

}  // namespace coreq
