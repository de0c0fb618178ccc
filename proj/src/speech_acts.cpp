#include "coreq/speech_acts.hpp"

#include <algorithm>

namespace coreq {

std::string to_string(Force f) {
  switch (f) {
    case Force::assertive: return "assertive";
    case Force::declarative: return "declarative";
    case Force::representative_declarative: return "representative_declarative";
    case Force::directive: return "directive";
    case Force::commissive: return "commissive";
    case Force::expressive: return "expressive";
  }
  return "?";
}

std::string to_string(Modality m) {
  switch (m) {
    case Modality::belief: return "B";
    case Modality::desire: return "D";
    case Modality::intention: return "I";
    case Modality::attitude: return "A";
  }
  return "?";
}

std::string to_string(Connective c) {
  switch (c) {
    case Connective::conjunction: return "and";
    case Connective::disjunction: return "or";
    case Connective::if_then: return "if_then";
  }
  return "?";
}

std::optional<Force> force_from_string(const std::string& s) {
  if (s == "assertive") return Force::assertive;
  if (s == "declarative") return Force::declarative;
  if (s == "representative_declarative") return Force::representative_declarative;
  if (s == "directive") return Force::directive;
  if (s == "commissive") return Force::commissive;
  if (s == "expressive") return Force::expressive;
  return std::nullopt;
}

const Utterance* UtteranceSet::find(const std::string& id) const {
  for (const auto& u : utterances)
    if (u.id == id) return &u;
  return nullptr;
}

namespace {

void collect_leaves(const Utterance& u, const UtteranceSet& set, DecomposeResult& out,
                    std::vector<std::string>& path) {
  if (u.is_leaf()) {
    out.leaves.push_back(&u);
    return;
  }
  size_t min_children = u.connective == Connective::if_then ? 2 : 2;
  if (u.children.size() < min_children ||
      (u.connective == Connective::if_then && u.children.size() != 2)) {
    out.diagnostics.push_back({Severity::error, codes::malformed_utterance,
                               "compound utterance requires " +
                                   std::string(u.connective == Connective::if_then
                                                   ? "exactly two"
                                                   : "at least two") +
                                   " children",
                               u.id, u.span});
    return;
  }
  for (const auto& cid : u.children) {
    if (std::find(path.begin(), path.end(), cid) != path.end()) {
      out.diagnostics.push_back({Severity::error, codes::malformed_utterance,
                                 "cyclic compound reference", u.id, u.span});
      return;
    }
    const Utterance* child = set.find(cid);
    if (!child) {
      out.diagnostics.push_back({Severity::error, codes::dangling_ref,
                                 "unknown child utterance '" + cid + "'", u.id, u.span});
      continue;
    }
    path.push_back(cid);
    collect_leaves(*child, set, out, path);
    path.pop_back();
  }
}

}  // namespace

DecomposeResult decompose(const Utterance& u, const UtteranceSet& set) {
  DecomposeResult out;
  std::vector<std::string> path{u.id};
  collect_leaves(u, set, out, path);
  return out;
}

ModalContent modalize(const Utterance& leaf) {
  ModalContent mc;
  mc.source = leaf.id;
  if (leaf.content) mc.content = *leaf.content;
  switch (leaf.force.value_or(Force::assertive)) {
    case Force::assertive:
    case Force::declarative:
    case Force::representative_declarative:
      mc.modality = Modality::belief;
      break;
    case Force::directive:
      mc.modality = Modality::desire;
      break;
    case Force::commissive:
      mc.modality = Modality::intention;
      break;
    case Force::expressive:
      mc.modality = Modality::attitude;
      break;
  }
  return mc;
}

std::optional<ElementKind> ClassifyEnv::kind_of(const std::string& id) const {
  for (const auto& [eid, kind] : element_kinds)
    if (eid == id) return kind;
  return std::nullopt;
}

bool ClassifyEnv::is_preference(const std::string& id) const {
  return std::find(preference_ids.begin(), preference_ids.end(), id) !=
         preference_ids.end();
}

ClassifiedInstance classify(const ModalContent& mc, const ClassifyEnv& env) {
  ClassifiedInstance out;
  auto err = [&out, &mc](const char* code, std::string msg) {
    out.diagnostics.push_back({Severity::error, code, std::move(msg), mc.source, {}});
  };

  if (mc.modality == Modality::attitude) {
    Attitude a;
    a.id = mc.source;
    if (const auto* ev = std::get_if<EvaluationContent>(&mc.content)) {
      a.form = AttitudeForm::evaluation;
      a.sign = ev->sign;
      a.target = ev->target;
      if (!env.kind_of(ev->target)) {
        err(codes::dangling_ref, "evaluation targets unknown element '" + ev->target + "'");
        return out;
      }
    } else if (const auto* pr = std::get_if<PreferenceContent>(&mc.content)) {
      if (pr->over_preferences) {
        a.form = AttitudeForm::meta_preference;
        for (const auto& end : {pr->preferred, pr->dispreferred})
          if (!env.is_preference(end)) {
            err(codes::meta_endpoint,
                "meta-preference endpoint '" + end + "' is not a known preference");
            return out;
          }
      } else {
        a.form = AttitudeForm::preference;
        auto pk = env.kind_of(pr->preferred);
        auto dk = env.kind_of(pr->dispreferred);
        if (!pk || !dk) {
          err(codes::dangling_ref,
              "preference endpoint '" + (pk ? pr->dispreferred : pr->preferred) +
                  "' unknown");
          return out;
        }
        if (*pk != *dk) {
          err(codes::mixed_order,
              "preference endpoints must share the same element kind (" +
                  to_string(*pk) + " vs " + to_string(*dk) + ")");
          return out;
        }
      }
      a.preferred = pr->preferred;
      a.dispreferred = pr->dispreferred;
    } else {
      err(codes::missing_content, "expressive utterance lacks an attitude payload");
      return out;
    }
    out.attitude = a;
    return out;
  }

  const auto* prop = std::get_if<PropositionalContent>(&mc.content);
  if (!prop) {
    err(codes::missing_content, "utterance lacks a propositional payload");
    return out;
  }
  Element e;
  e.id = mc.source;
  e.source_utterance = mc.source;
  e.holds = prop->holds;
  switch (mc.modality) {
    case Modality::belief:
      e.kind = ElementKind::domain_assumption;
      break;
    case Modality::intention:
      e.kind = ElementKind::plan;
      break;
    case Modality::desire: {
      auto tri = classify_directive_content(
          {prop->holds, prop->quality, prop->constraint_expr}, env.qualities);
      if (!tri.ok()) {
        for (auto& d : tri.diagnostics) {
          d.subject = mc.source;
          out.diagnostics.push_back(d);
        }
        return out;
      }
      e.kind = *tri.kind;
      e.quality = prop->quality;
      e.constraint_expr = prop->constraint_expr;
      e.params = prop->params;
      break;
    }
    case Modality::attitude:
      break;  // handled above
  }
  out.element = e;
  return out;
}

PipelineResult classify_utterances(const UtteranceSet& set, const Model& registry) {
  PipelineResult out;

  ClassifyEnv env;
  env.qualities = registry.qualities;
  for (const auto& e : registry.elements) env.element_kinds.emplace_back(e.id, e.kind);
  for (const auto& a : registry.attitudes)
    if (a.form == AttitudeForm::preference) env.preference_ids.push_back(a.id);

  // top-level utterances are those not referenced as a child of a compound
  std::vector<const Utterance*> roots;
  for (const auto& u : set.utterances) {
    bool is_child = false;
    for (const auto& parent : set.utterances)
      for (const auto& cid : parent.children)
        if (cid == u.id) is_child = true;
    if (!is_child) roots.push_back(&u);
  }

  std::vector<const Utterance*> leaves;
  for (const Utterance* root : roots) {
    auto dec = decompose(*root, set);
    for (auto& d : dec.diagnostics) out.diagnostics.push_back(d);
    for (const Utterance* leaf : dec.leaves) leaves.push_back(leaf);
  }

  // Expressives go second so attitude payloads can reference elements that
  // this same document introduces.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Utterance* leaf : leaves) {
      bool expressive = leaf->force == Force::expressive;
      if (expressive != (pass == 1)) continue;
      if (!leaf->content) {
        out.diagnostics.push_back({Severity::error, codes::missing_content,
                                   "leaf utterance lacks content", leaf->id, leaf->span});
        continue;
      }
      auto inst = classify(modalize(*leaf), env);
      for (auto& d : inst.diagnostics) {
        d.span = leaf->span;
        out.diagnostics.push_back(d);
      }
      if (inst.element) {
        out.elements.push_back(*inst.element);
        env.element_kinds.emplace_back(inst.element->id, inst.element->kind);
      }
      if (inst.attitude) {
        out.attitudes.push_back(*inst.attitude);
        if (inst.attitude->form == AttitudeForm::preference)
          env.preference_ids.push_back(inst.attitude->id);
      }
    }
  }
  return out;
}

}  // namespace coreq
