#include <algorithm>
#include <set>
#include <string>

#include "coreq/generate.hpp"

namespace coreq {
namespace {

std::string atom_name(int i) { return "a" + std::to_string(i); }

int pick(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<unsigned long>(n));
}

}  // namespace

DefeasibleProgram random_program(std::mt19937_64& rng, const ProgramGenOptions& o) {
  DefeasibleProgram p;

  std::set<int> fact_atoms;
  while (static_cast<int>(fact_atoms.size()) < std::min(o.facts, o.atoms))
    fact_atoms.insert(pick(rng, o.atoms));
  for (int a : fact_atoms) p.facts.push_back({atom_name(a), rng() % 4 == 0});

  auto random_rule = [&](const std::string& id, RuleStrength strength) {
    Rule r;
    r.id = id;
    r.strength = strength;
    int len = 1 + pick(rng, o.max_body);
    std::set<int> body_atoms;
    while (static_cast<int>(body_atoms.size()) < std::min(len, o.atoms))
      body_atoms.insert(pick(rng, o.atoms));
    for (int a : body_atoms) r.body.push_back({atom_name(a), rng() % 3 == 0});
    int head;
    do {
      head = pick(rng, o.atoms);
    } while (body_atoms.count(head) && static_cast<int>(body_atoms.size()) < o.atoms);
    r.head = {atom_name(head), rng() % 2 == 0};
    return r;
  };

  for (int i = 0; i < o.strict_rules; ++i)
    p.rules.push_back(random_rule("s" + std::to_string(i + 1), RuleStrength::strict));
  for (int i = 0; i < o.defeasible_rules; ++i)
    p.rules.push_back(random_rule("d" + std::to_string(i + 1), RuleStrength::defeasible));

  // priorities point from a lower-numbered id to a higher one, so the
  // declared order is acyclic by construction
  std::set<std::pair<int, int>> chosen;
  int want = std::min(o.priorities, o.defeasible_rules * (o.defeasible_rules - 1) / 2);
  int guard = 20 * std::max(1, want);
  while (static_cast<int>(chosen.size()) < want && guard-- > 0) {
    int i = pick(rng, o.defeasible_rules);
    int j = pick(rng, o.defeasible_rules);
    if (i == j) continue;
    chosen.emplace(std::min(i, j), std::max(i, j));
  }
  for (const auto& [hi, lo] : chosen)
    p.priorities.emplace_back("d" + std::to_string(hi + 1), "d" + std::to_string(lo + 1));
  return p;
}

Model random_definite_model(std::mt19937_64& rng, const DefiniteModelGenOptions& o) {
  Model m;
  int next = 0;
  auto add_element = [&](ElementKind kind, const std::string& prefix) {
    Element e;
    e.id = prefix + std::to_string(++next);
    e.kind = kind;
    e.holds = {atom_name(pick(rng, o.atoms)), false};
    m.elements.push_back(std::move(e));
  };
  for (int i = 0; i < o.assumptions; ++i) add_element(ElementKind::domain_assumption, "k");
  for (int i = 0; i < o.plans; ++i) add_element(ElementKind::plan, "p");
  for (int i = 0; i < o.goals; ++i) add_element(ElementKind::goal, "g");

  for (int i = 0; i < o.rules; ++i) {
    Rule r;
    r.id = "s" + std::to_string(i + 1);
    r.strength = RuleStrength::strict;
    int len = 1 + pick(rng, o.max_body);
    std::set<int> body;
    while (static_cast<int>(body.size()) < std::min(len, o.atoms))
      body.insert(pick(rng, o.atoms));
    for (int a : body) r.body.push_back({atom_name(a), false});
    r.head = {atom_name(pick(rng, o.atoms)), false};
    m.rules.push_back(std::move(r));
  }
  resolve_optionality(m);
  return m;
}

Model random_model(std::mt19937_64& rng, const ModelGenOptions& o) {
  Model m;

  QualityType w1{"w1", MeasurementLevel::ordinal, QualityStructure::well_defined_shared,
                 "0..100"};
  QualityType s1{"s1", MeasurementLevel::ordinal, QualityStructure::subjective_ill_defined,
                 ""};
  m.qualities.push_back(w1);
  m.qualities.push_back(s1);
  bool two_spaces = rng() % 2 == 0;
  if (two_spaces)
    m.qualities.push_back({"w2", MeasurementLevel::ratio,
                           QualityStructure::well_defined_shared, "0..3600"});

  int next_atom = 0;
  auto fresh = [&] { return "m" + std::to_string(++next_atom); };
  auto coin_opt = [&] {
    return rng() % 4 == 0 ? Optionality::optional : Optionality::compulsory;
  };

  auto add = [&](ElementKind kind, const std::string& id, const std::string& quality,
                 const std::string& constraint) {
    Element e;
    e.id = id;
    e.kind = kind;
    e.holds = {fresh(), rng() % 5 == 0};
    e.quality = quality;
    e.constraint_expr = constraint;
    e.declared_optionality = coin_opt();
    m.elements.push_back(std::move(e));
  };

  for (int i = 0; i < o.assumptions; ++i)
    add(ElementKind::domain_assumption, "k" + std::to_string(i + 1), "", "");
  for (int i = 0; i < o.goals; ++i)
    add(ElementKind::goal, "g" + std::to_string(i + 1), "", "");
  if (o.goals > 0 && rng() % 2 == 0)
    m.elements[static_cast<size_t>(o.assumptions)].params = {"origin", "destination"};
  for (int i = 0; i < o.qcs; ++i)
    add(ElementKind::quality_constraint, "q" + std::to_string(i + 1),
        two_spaces && i % 2 == 1 ? "w2" : "w1",
        "value <= " + std::to_string(1 + pick(rng, 99)));
  for (int i = 0; i < o.softgoals; ++i)
    add(ElementKind::softgoal, "sg" + std::to_string(i + 1), "s1", "");
  for (int i = 0; i < o.plans; ++i)
    add(ElementKind::plan, "p" + std::to_string(i + 1), "", "");

  int defeasible_count = 0;
  for (int i = 0; i < o.rules; ++i) {
    Rule r;
    r.id = "r" + std::to_string(i + 1);
    r.strength = rng() % 2 == 0 ? RuleStrength::strict : RuleStrength::defeasible;
    if (r.strength == RuleStrength::defeasible) ++defeasible_count;
    int len = 1 + pick(rng, 2);
    std::set<int> body;
    while (static_cast<int>(body.size()) < len) body.insert(1 + pick(rng, next_atom + 2));
    for (int a : body) r.body.push_back({"m" + std::to_string(a), rng() % 4 == 0});
    r.head = {"m" + std::to_string(1 + pick(rng, next_atom + 2)), rng() % 3 == 0};
    m.rules.push_back(std::move(r));
  }
  std::vector<std::string> defeasible_ids;
  for (const Rule& r : m.rules)
    if (r.strength == RuleStrength::defeasible) defeasible_ids.push_back(r.id);
  for (size_t i = 0; i + 1 < defeasible_ids.size(); ++i)
    if (rng() % 2 == 0)
      m.priorities.emplace_back(defeasible_ids[i], defeasible_ids[i + 1]);

  std::set<std::pair<std::string, std::string>> seen_approx;
  for (int i = 0; i < o.softgoals && o.qcs > 0; ++i) {
    JustifiedApproximation ap;
    ap.softgoal = "sg" + std::to_string(i + 1);
    ap.qc = "q" + std::to_string(1 + pick(rng, o.qcs));
    if (!seen_approx.insert({ap.softgoal, ap.qc}).second) continue;
    double mag = 0.5 + 0.5 * static_cast<double>(rng() % 1000) / 999.0;
    ap.correlation = rng() % 4 == 0 ? -mag : mag;
    ap.justification = "survey batch " + std::to_string(i + 1);
    m.approximations.push_back(std::move(ap));
  }

  std::vector<std::string> all_ids;
  for (const Element& e : m.elements) all_ids.push_back(e.id);
  for (int i = 0; i < o.evaluations && !all_ids.empty(); ++i) {
    Attitude a;
    a.id = "ev" + std::to_string(i + 1);
    a.form = AttitudeForm::evaluation;
    a.target = all_ids[static_cast<size_t>(pick(rng, static_cast<int>(all_ids.size())))];
    a.sign = rng() % 2 == 0 ? EvaluationSign::favor : EvaluationSign::disfavor;
    a.optionality = coin_opt();
    m.attitudes.push_back(std::move(a));
  }

  auto ids_of = [&](ElementKind k) {
    std::vector<std::string> ids;
    for (const Element& e : m.elements)
      if (e.kind == k) ids.push_back(e.id);
    return ids;
  };
  std::vector<std::vector<std::string>> buckets = {
      ids_of(ElementKind::goal), ids_of(ElementKind::plan),
      ids_of(ElementKind::quality_constraint), ids_of(ElementKind::softgoal)};
  int made_prefs = 0;
  for (int i = 0; i < o.preferences; ++i) {
    const auto& bucket = buckets[static_cast<size_t>(pick(rng, 4))];
    if (bucket.size() < 2) continue;
    int x = pick(rng, static_cast<int>(bucket.size()));
    int y = pick(rng, static_cast<int>(bucket.size()));
    if (x == y) y = (y + 1) % static_cast<int>(bucket.size());
    Attitude a;
    a.id = "pf" + std::to_string(++made_prefs);
    a.form = AttitudeForm::preference;
    a.preferred = bucket[static_cast<size_t>(x)];
    a.dispreferred = bucket[static_cast<size_t>(y)];
    a.optionality = coin_opt();
    m.attitudes.push_back(std::move(a));
  }
  if (o.meta && made_prefs >= 2) {
    Attitude a;
    a.id = "mp1";
    a.form = AttitudeForm::meta_preference;
    a.preferred = "pf1";
    a.dispreferred = "pf2";
    m.attitudes.push_back(std::move(a));
  }

  if (o.alternatives && o.plans >= 2)
    m.alternatives.push_back({"p1", "p2"});

  resolve_optionality(m);
  return m;
}

}  // namespace coreq
