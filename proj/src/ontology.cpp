#include "coreq/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace coreq {

bool is_valid_atom(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::string to_string(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::note: return "note";
  }
  return "?";
}

bool has_errors(const Diagnostics& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format(const Diagnostic& d) {
  std::ostringstream os;
  if (!d.span.file.empty())
    os << d.span.file << ":" << d.span.line << ":" << d.span.column << ": ";
  os << to_string(d.severity) << " [" << d.code << "] " << d.message;
  if (!d.subject.empty()) os << " (" << d.subject << ")";
  return os.str();
}

std::string to_string(MeasurementLevel l) {
  switch (l) {
    case MeasurementLevel::nominal: return "nominal";
    case MeasurementLevel::ordinal: return "ordinal";
    case MeasurementLevel::interval: return "interval";
    case MeasurementLevel::ratio: return "ratio";
  }
  return "?";
}

std::string to_string(QualityStructure s) {
  return s == QualityStructure::well_defined_shared ? "well_defined_shared"
                                                    : "subjective_ill_defined";
}

std::string to_string(ElementKind k) {
  switch (k) {
    case ElementKind::domain_assumption: return "assumption";
    case ElementKind::goal: return "goal";
    case ElementKind::quality_constraint: return "qc";
    case ElementKind::softgoal: return "softgoal";
    case ElementKind::plan: return "plan";
  }
  return "?";
}

std::string to_string(Optionality o) {
  return o == Optionality::compulsory ? "compulsory" : "optional";
}

std::string to_string(AttitudeForm f) {
  switch (f) {
    case AttitudeForm::evaluation: return "evaluation";
    case AttitudeForm::preference: return "preference";
    case AttitudeForm::meta_preference: return "meta_preference";
  }
  return "?";
}

std::string to_string(EvaluationSign s) {
  return s == EvaluationSign::favor ? "favor" : "disfavor";
}

const QualityType* Model::find_quality(const std::string& id) const {
  for (const auto& q : qualities)
    if (q.id == id) return &q;
  return nullptr;
}

const Element* Model::find_element(const std::string& id) const {
  for (const auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

const Attitude* Model::find_attitude(const std::string& id) const {
  for (const auto& a : attitudes)
    if (a.id == id) return &a;
  return nullptr;
}

const Rule* Model::find_rule(const std::string& id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

void resolve_optionality(Model& m) {
  for (auto& e : m.elements) {
    bool evaluated = false;
    bool disfavored = false;
    for (const auto& a : m.attitudes) {
      if (a.form == AttitudeForm::evaluation && a.target == e.id) {
        evaluated = true;
        if (a.sign == EvaluationSign::disfavor) disfavored = true;
      }
    }
    e.disfavored = disfavored;
    if (e.declared_optionality)
      e.optionality = *e.declared_optionality;
    else
      e.optionality = evaluated ? Optionality::optional : Optionality::compulsory;
  }
}

namespace {

void diag(Diagnostics& out, Severity sev, const char* code, std::string msg,
          std::string subject, const SourceSpan& span) {
  out.push_back({sev, code, std::move(msg), std::move(subject), span});
}

// Detects a directed cycle in edges over the given node set.
bool has_cycle(const std::set<std::string>& nodes,
               const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  // iterative DFS with explicit stack
  for (const auto& start : nodes) {
    if (state[start] != 0) continue;
    std::vector<std::pair<std::string, size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      auto& next = adj[node];
      if (idx < next.size()) {
        const std::string& to = next[idx++];
        if (state[to] == 1) return true;
        if (state[to] == 0) {
          state[to] = 1;
          stack.push_back({to, 0});
        }
      } else {
        state[node] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

Diagnostics validate_model(const Model& m, const ValidateOptions& opts) {
  Diagnostics ds;

  // id uniqueness per namespace
  auto check_unique = [&ds](const auto& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& it : items) {
      if (!seen.insert(it.id).second)
        diag(ds, Severity::error, codes::duplicate_id,
             std::string("duplicate ") + what + " id", it.id, it.span);
    }
  };
  check_unique(m.qualities, "quality");
  check_unique(m.elements, "element");
  check_unique(m.attitudes, "attitude");
  check_unique(m.rules, "rule");

  for (const auto& q : m.qualities) {
    if (q.structure == QualityStructure::well_defined_shared && q.domain.empty())
      diag(ds, Severity::error, codes::domain_required,
           "well-defined shared quality space requires a domain", q.id, q.span);
  }

  for (const auto& e : m.elements) {
    if (!is_valid_atom(e.holds.atom))
      diag(ds, Severity::error, codes::bad_atom,
           "holds literal atom must be a lowercase-start identifier", e.id, e.span);
    const QualityType* q = e.quality.empty() ? nullptr : m.find_quality(e.quality);
    if (!e.quality.empty() && !q)
      diag(ds, Severity::error, codes::dangling_ref,
           "unknown quality '" + e.quality + "'", e.id, e.span);
    switch (e.kind) {
      case ElementKind::quality_constraint:
        if (e.quality.empty())
          diag(ds, Severity::error, codes::qc_quality_space,
               "quality constraint requires a quality reference", e.id, e.span);
        else if (q && q->structure != QualityStructure::well_defined_shared)
          diag(ds, Severity::error, codes::qc_quality_space,
               "quality constraint requires a well-defined shared quality space",
               e.id, e.span);
        if (e.constraint_expr.empty())
          diag(ds, Severity::error, codes::constraint_required,
               "constraint expression required", e.id, e.span);
        break;
      case ElementKind::softgoal:
        if (e.quality.empty())
          diag(ds, Severity::error, codes::softgoal_quality_space,
               "softgoal requires a quality reference", e.id, e.span);
        else if (q && q->structure != QualityStructure::subjective_ill_defined)
          diag(ds, Severity::error, codes::softgoal_quality_space,
               "softgoal requires subjective quality space", e.id, e.span);
        if (!e.constraint_expr.empty())
          diag(ds, Severity::error, codes::quality_forbidden,
               "softgoal cannot carry a constraint expression", e.id, e.span);
        break;
      default:
        if (!e.quality.empty() || !e.constraint_expr.empty())
          diag(ds, Severity::error, codes::quality_forbidden,
               "quality and constraint are only allowed on quality constraints and softgoals",
               e.id, e.span);
        break;
    }
    if (!e.params.empty() && e.kind != ElementKind::goal)
      diag(ds, Severity::error, codes::params_kind,
           "params are only allowed on goals", e.id, e.span);
  }

  for (const auto& ap : m.approximations) {
    std::string subject = ap.softgoal + "<-" + ap.qc;
    const Element* sg = m.find_element(ap.softgoal);
    const Element* qc = m.find_element(ap.qc);
    if (!sg || sg->kind != ElementKind::softgoal)
      diag(ds, Severity::error, codes::approx_kind,
           "approximation source must be a softgoal", subject, ap.span);
    if (!qc || qc->kind != ElementKind::quality_constraint)
      diag(ds, Severity::error, codes::approx_kind,
           "approximation target must be a quality constraint", subject, ap.span);
    if (std::fabs(ap.correlation) > 1.0)
      diag(ds, Severity::error, codes::correlation_range,
           "correlation must lie in [-1, 1]", subject, ap.span);
    else if (std::fabs(ap.correlation) < opts.approx_threshold)
      diag(ds, Severity::error, codes::insufficient_correlation,
           "insufficient correlation", subject, ap.span);
    if (ap.justification.empty())
      diag(ds, Severity::error, codes::justification_required,
           "justification record required", subject, ap.span);
  }

  for (const auto& r : m.rules) {
    if (r.body.empty())
      diag(ds, Severity::error, codes::empty_rule_body,
           "rules require a non-empty body; state facts through elements", r.id, r.span);
    if (!is_valid_atom(r.head.atom))
      diag(ds, Severity::error, codes::bad_atom, "invalid head atom", r.id, r.span);
    for (const auto& b : r.body)
      if (!is_valid_atom(b.atom))
        diag(ds, Severity::error, codes::bad_atom, "invalid body atom", r.id, r.span);
  }

  std::set<std::string> defeasible_ids;
  for (const auto& r : m.rules)
    if (r.strength == RuleStrength::defeasible) defeasible_ids.insert(r.id);
  std::set<std::string> priority_nodes;
  for (const auto& [hi, lo] : m.priorities) {
    for (const auto& id : {hi, lo}) {
      priority_nodes.insert(id);
      if (!defeasible_ids.count(id))
        diag(ds, Severity::error, codes::priority_target,
             "priority endpoints must be defeasible rule ids", id, {});
    }
    if (hi == lo)
      diag(ds, Severity::error, codes::priority_cycle,
           "priority relation must be irreflexive", hi, {});
  }
  if (has_cycle(priority_nodes, m.priorities))
    diag(ds, Severity::error, codes::priority_cycle,
         "priority relation must be acyclic", "", {});

  // attitudes
  std::set<std::string> preference_ids;
  for (const auto& a : m.attitudes)
    if (a.form == AttitudeForm::preference) preference_ids.insert(a.id);
  std::vector<std::pair<std::string, std::string>> meta_edges;
  for (const auto& a : m.attitudes) {
    switch (a.form) {
      case AttitudeForm::evaluation:
        if (!m.find_element(a.target))
          diag(ds, Severity::error, codes::dangling_ref,
               "evaluation targets unknown element '" + a.target + "'", a.id, a.span);
        break;
      case AttitudeForm::preference: {
        const Element* p = m.find_element(a.preferred);
        const Element* d = m.find_element(a.dispreferred);
        if (!p)
          diag(ds, Severity::error, codes::dangling_ref,
               "preference endpoint '" + a.preferred + "' unknown", a.id, a.span);
        if (!d)
          diag(ds, Severity::error, codes::dangling_ref,
               "preference endpoint '" + a.dispreferred + "' unknown", a.id, a.span);
        if (p && d && p->kind != d->kind)
          diag(ds, Severity::error, codes::mixed_order,
               "preference endpoints must share the same element kind", a.id, a.span);
        break;
      }
      case AttitudeForm::meta_preference:
        for (const auto& end : {a.preferred, a.dispreferred})
          if (!preference_ids.count(end))
            diag(ds, Severity::error, codes::meta_endpoint,
                 "meta-preference endpoint '" + end + "' is not a preference", a.id,
                 a.span);
        meta_edges.emplace_back(a.preferred, a.dispreferred);
        break;
    }
  }
  std::set<std::string> meta_nodes;
  for (const auto& [x, y] : meta_edges) {
    meta_nodes.insert(x);
    meta_nodes.insert(y);
  }
  if (has_cycle(meta_nodes, meta_edges))
    diag(ds, Severity::error, codes::meta_cycle,
         "meta-preference graph must be acyclic", "", {});

  for (const auto& group : m.alternatives) {
    std::string subject;
    for (const auto& id : group) subject += (subject.empty() ? "" : "|") + id;
    if (group.size() < 2)
      diag(ds, Severity::error, codes::alt_group_size,
           "alternatives group must list at least two elements", subject, {});
    const Element* first = nullptr;
    for (const auto& id : group) {
      const Element* e = m.find_element(id);
      if (!e) {
        diag(ds, Severity::error, codes::dangling_ref,
             "alternatives member '" + id + "' unknown", subject, {});
        continue;
      }
      if (!first)
        first = e;
      else if (e->kind != first->kind)
        diag(ds, Severity::error, codes::alt_group_kind,
             "alternatives group members must share one kind", subject, {});
    }
  }

  return ds;
}

OptionalityPartition partition_by_optionality(const Model& m) {
  OptionalityPartition p;
  auto cell = [&p](ElementKind k, bool comp) -> std::vector<std::string>& {
    switch (k) {
      case ElementKind::domain_assumption: return comp ? p.assumptions_c : p.assumptions_o;
      case ElementKind::goal: return comp ? p.goals_c : p.goals_o;
      case ElementKind::quality_constraint: return comp ? p.qcs_c : p.qcs_o;
      case ElementKind::softgoal: return comp ? p.softgoals_c : p.softgoals_o;
      case ElementKind::plan: return comp ? p.plans_c : p.plans_o;
    }
    return p.goals_c;
  };
  for (const auto& e : m.elements)
    cell(e.kind, e.optionality == Optionality::compulsory).push_back(e.id);
  for (const auto& a : m.attitudes)
    (a.optionality == Optionality::compulsory ? p.attitudes_c : p.attitudes_o)
        .push_back(a.id);
  return p;
}

TrichotomyResult classify_directive_content(const DirectiveContent& content,
                                            const std::vector<QualityType>& registry) {
  TrichotomyResult r;
  if (content.quality.empty()) {
    r.kind = ElementKind::goal;
    return r;
  }
  const QualityType* q = nullptr;
  for (const auto& cand : registry)
    if (cand.id == content.quality) q = &cand;
  if (!q) {
    r.diagnostics.push_back({Severity::error, codes::dangling_ref,
                             "unknown quality '" + content.quality + "'", "", {}});
    return r;
  }
  if (q->structure == QualityStructure::subjective_ill_defined) {
    r.kind = ElementKind::softgoal;
    return r;
  }
  if (content.constraint_expr.empty()) {
    r.diagnostics.push_back({Severity::error, codes::constraint_required,
                             "constraint expression required", "", {}});
    return r;
  }
  r.kind = ElementKind::quality_constraint;
  return r;
}

namespace {

template <typename T, typename Key>
std::vector<T> sorted_by(std::vector<T> v, Key key) {
  std::sort(v.begin(), v.end(),
            [&key](const T& a, const T& b) { return key(a) < key(b); });
  return v;
}

}  // namespace

bool structurally_equal(const Model& a, const Model& b) {
  auto qa = sorted_by(a.qualities, [](const QualityType& q) { return q.id; });
  auto qb = sorted_by(b.qualities, [](const QualityType& q) { return q.id; });
  if (qa != qb) return false;
  auto ea = sorted_by(a.elements, [](const Element& e) { return e.id; });
  auto eb = sorted_by(b.elements, [](const Element& e) { return e.id; });
  if (ea != eb) return false;
  auto apkey = [](const JustifiedApproximation& x) { return x.softgoal + "\0" + x.qc; };
  if (sorted_by(a.approximations, apkey) != sorted_by(b.approximations, apkey)) return false;
  auto aa = sorted_by(a.attitudes, [](const Attitude& x) { return x.id; });
  auto ab = sorted_by(b.attitudes, [](const Attitude& x) { return x.id; });
  if (aa != ab) return false;
  auto ra = sorted_by(a.rules, [](const Rule& r) { return r.id; });
  auto rb = sorted_by(b.rules, [](const Rule& r) { return r.id; });
  if (ra != rb) return false;
  auto pa = a.priorities, pb = b.priorities;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return false;
  auto ga = a.alternatives, gb = b.alternatives;
  for (auto& g : ga) std::sort(g.begin(), g.end());
  for (auto& g : gb) std::sort(g.begin(), g.end());
  std::sort(ga.begin(), ga.end());
  std::sort(gb.begin(), gb.end());
  return ga == gb;
}

}  // namespace coreq
