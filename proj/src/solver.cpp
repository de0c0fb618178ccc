#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "coreq/classical.hpp"
#include "coreq/naive_warrant.hpp"
#include "coreq/solver.hpp"

namespace coreq {
namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

int level(const std::vector<std::string>& sorted_ids, const std::string& id) {
  return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id) ? 1 : 0;
}

std::set<std::pair<std::string, std::string>> transitive(
    std::set<std::pair<std::string, std::string>> rel) {
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : rel)
      for (const auto& [c, d] : rel)
        if (b == c && !rel.count({a, d})) add.emplace_back(a, d);
    for (auto& e : add) grew |= rel.insert(std::move(e)).second;
  }
  return rel;
}

// Best sufficiently correlated quality constraint for a softgoal: highest
// absolute correlation, ties to the smallest qc id.
std::optional<std::string> covering_qc(const Model& m, const std::string& sg,
                                       double threshold) {
  std::optional<std::string> best;
  double best_c = -1.0;
  for (const JustifiedApproximation& ap : m.approximations) {
    if (ap.softgoal != sg) continue;
    double c = std::fabs(ap.correlation);
    if (c < threshold) continue;
    if (c > best_c || (c == best_c && ap.qc < *best)) {
      best_c = c;
      best = ap.qc;
    }
  }
  return best;
}

}  // namespace

std::vector<std::string> Candidate::all() const {
  std::vector<std::string> out = combo;
  out.insert(out.end(), optionals.begin(), optionals.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Candidate::includes(const std::string& id) const {
  return std::binary_search(combo.begin(), combo.end(), id) ||
         std::binary_search(optionals.begin(), optionals.end(), id);
}

std::string signature(const Model& m, const Candidate& c) {
  std::map<ElementKind, std::vector<std::string>> by;
  for (const std::string& id : c.all()) {
    const Element* e = m.find_element(id);
    by[e ? e->kind : ElementKind::goal].push_back(id);
  }
  const std::pair<ElementKind, const char*> order[] = {
      {ElementKind::domain_assumption, "K"}, {ElementKind::plan, "P"},
      {ElementKind::goal, "G"},              {ElementKind::quality_constraint, "Q"},
      {ElementKind::softgoal, "S"}};
  std::string out;
  for (const auto& [kind, tag] : order) {
    if (!out.empty()) out += '|';
    out += tag;
    out += '{' + join(by[kind], ",") + '}';
  }
  return out;
}

ResolvedPreferences resolve_preferences(const Model& m, double approx_threshold) {
  ResolvedPreferences out;

  std::vector<const Attitude*> prefs;
  for (const Attitude& a : m.attitudes)
    if (a.form == AttitudeForm::preference) prefs.push_back(&a);
  std::sort(prefs.begin(), prefs.end(),
            [](const Attitude* x, const Attitude* y) { return x->id < y->id; });

  std::set<std::pair<std::string, std::string>> meta;
  for (const Attitude& a : m.attitudes)
    if (a.form == AttitudeForm::meta_preference) meta.emplace(a.preferred, a.dispreferred);
  meta = transitive(std::move(meta));

  // Two preferences conflict when their most desirable choices cannot be
  // taken together: same alternatives group, or jointly inconsistent holds
  // literals under the strict rules.
  auto conflicting = [&](const Attitude* a, const Attitude* b) {
    const std::string& x = a->preferred;
    const std::string& u = b->preferred;
    if (x == u) return false;
    for (const auto& g : m.alternatives) {
      bool has_x = std::find(g.begin(), g.end(), x) != g.end();
      bool has_u = std::find(g.begin(), g.end(), u) != g.end();
      if (has_x && has_u) return true;
    }
    const Element* ex = m.find_element(x);
    const Element* eu = m.find_element(u);
    if (!ex || !eu) return false;
    DefeasibleProgram p;
    p.rules = m.rules;
    p.facts = {ex->holds, eu->holds};
    return !consistent(strict_closure(p));
  };

  std::set<std::string> dropped;
  for (size_t i = 0; i < prefs.size(); ++i)
    for (size_t j = i + 1; j < prefs.size(); ++j) {
      const Attitude* a = prefs[i];
      const Attitude* b = prefs[j];
      if (dropped.count(a->id) || dropped.count(b->id)) continue;
      if (!conflicting(a, b)) continue;
      if (meta.count({a->id, b->id})) {
        dropped.insert(b->id);
      } else if (meta.count({b->id, a->id})) {
        dropped.insert(a->id);
      } else if (a->optionality != b->optionality) {
        dropped.insert(a->optionality == Optionality::optional ? a->id : b->id);
      } else {
        out.diagnostics.push_back(
            {Severity::warning, codes::unresolved_conflict,
             "preferences '" + a->id + "' and '" + b->id +
                 "' conflict with no meta-preference between them; both retained",
             a->id, a->span});
      }
    }

  for (const Attitude* a : prefs) {
    if (dropped.count(a->id)) {
      out.dropped.push_back(a->id);
      continue;
    }
    EffectivePreference ep{a->id, a->preferred, a->dispreferred, false};
    const Element* pe = m.find_element(a->preferred);
    if (pe && pe->kind == ElementKind::softgoal) {
      out.obligations.push_back(ep);
      // For ranking purposes the ordering lives on the approximating
      // quality constraints; it only carries weight when the projection is
      // itself maintained by a preference in its own right.
      auto q1 = covering_qc(m, a->preferred, approx_threshold);
      auto q2 = covering_qc(m, a->dispreferred, approx_threshold);
      bool mirrored = false;
      if (q1 && q2 && *q1 != *q2)
        for (const Attitude* other : prefs)
          if (!dropped.count(other->id) && other->preferred == *q1 &&
              other->dispreferred == *q2)
            mirrored = true;
      if (!mirrored) continue;
      ep.preferred = *q1;
      ep.dispreferred = *q2;
      ep.projected = true;
    }
    out.retained.push_back(std::move(ep));
  }
  return out;
}

DefeasibleProgram program_for(const Model& m, const Candidate& c) {
  DefeasibleProgram p;
  p.rules = m.rules;
  p.priorities = m.priorities;
  for (const std::string& id : c.all()) {
    const Element* e = m.find_element(id);
    if (!e) continue;
    if (e->kind == ElementKind::domain_assumption || e->kind == ElementKind::plan)
      p.facts.push_back(e->holds);
  }
  std::sort(p.facts.begin(), p.facts.end());
  p.facts.erase(std::unique(p.facts.begin(), p.facts.end()), p.facts.end());
  return p;
}

std::vector<Candidate> enumerate_compulsory_combinations(const Model& m) {
  std::set<std::string> grouped;
  for (const auto& g : m.alternatives) grouped.insert(g.begin(), g.end());

  std::vector<std::string> fixed;
  for (const Element& e : m.elements)
    if (e.optionality == Optionality::compulsory && !grouped.count(e.id))
      fixed.push_back(e.id);
  std::sort(fixed.begin(), fixed.end());

  auto groups = m.alternatives;
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end());
  std::vector<std::vector<std::string>> slots;
  for (const auto& g : groups) {
    std::vector<std::string> slot;
    for (const std::string& id : g) {
      const Element* e = m.find_element(id);
      if (e && e->optionality == Optionality::compulsory) slot.push_back(id);
    }
    if (!slot.empty()) slots.push_back(std::move(slot));
  }

  size_t total = 1;
  for (const auto& s : slots) total *= s.size();

  std::vector<Candidate> out;
  for (size_t n = 0; n < total; ++n) {
    Candidate c;
    c.combo = fixed;
    size_t rem = n;
    for (size_t i = slots.size(); i-- > 0;) {
      c.combo.push_back(slots[i][rem % slots[i].size()]);
      rem /= slots[i].size();
    }
    std::sort(c.combo.begin(), c.combo.end());
    DefeasibleProgram p;
    p.rules = m.rules;
    for (const std::string& id : c.combo) p.facts.push_back(m.find_element(id)->holds);
    if (consistent(strict_closure(p))) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.combo < b.combo; });
  return out;
}

std::vector<Candidate> enumerate_candidates(const Model& m, long limit, bool* exhausted) {
  auto combos = enumerate_compulsory_combinations(m);

  std::vector<std::string> opt_ids;
  for (const Element& e : m.elements)
    if (e.optionality == Optionality::optional) opt_ids.push_back(e.id);
  std::sort(opt_ids.begin(), opt_ids.end());

  std::map<std::string, int> group_of;
  for (size_t gi = 0; gi < m.alternatives.size(); ++gi)
    for (const std::string& id : m.alternatives[gi])
      group_of[id] = static_cast<int>(gi);

  std::vector<std::set<int>> used_by_combo;
  for (const Candidate& base : combos) {
    std::set<int> used;
    for (const std::string& id : base.combo)
      if (auto it = group_of.find(id); it != group_of.end()) used.insert(it->second);
    used_by_combo.push_back(std::move(used));
  }

  // next k-combination of {0..o-1} in lexicographic order; false once done
  auto advance = [](std::vector<size_t>& idx, size_t o) {
    size_t k = idx.size();
    for (size_t i = k; i-- > 0;) {
      if (idx[i] < o - k + i) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  // Largest optional subsets first, so a tight budget still sees maximal
  // candidates; within one size, lexicographic over the sorted optional ids.
  bool finished = true;
  std::vector<Candidate> out;
  const size_t o = opt_ids.size();
  for (size_t k = o + 1; k-- > 0 && finished;) {
    for (size_t ci = 0; ci < combos.size() && finished; ++ci) {
      std::vector<size_t> idx(k);
      for (size_t i = 0; i < k; ++i) idx[i] = i;
      do {
        std::set<int> taken = used_by_combo[ci];
        Candidate c = combos[ci];
        bool legal = true;
        for (size_t i : idx) {
          auto it = group_of.find(opt_ids[i]);
          if (it != group_of.end() && !taken.insert(it->second).second) {
            legal = false;
            break;
          }
          c.optionals.push_back(opt_ids[i]);
        }
        if (legal) {
          if (static_cast<long>(out.size()) >= limit) {
            finished = false;
            break;
          }
          out.push_back(std::move(c));
        }
      } while (advance(idx, o));
    }
  }
  if (exhausted) *exhausted = finished;
  return out;
}

CandidateCheck check_candidate(const Model& m, const Candidate& c,
                               const SolveOptions& opts) {
  CandidateCheck r;

  std::vector<const Element*> targets, assumptions, softgoals;
  DefeasibleProgram whole;
  whole.rules = m.rules;
  for (const std::string& id : c.all()) {
    const Element* e = m.find_element(id);
    if (!e) {
      r.diagnostics.push_back({Severity::error, codes::dangling_ref,
                               "unknown element '" + id + "'", id, {}});
      return r;
    }
    whole.facts.push_back(e->holds);
    if (e->kind == ElementKind::goal || e->kind == ElementKind::quality_constraint)
      targets.push_back(e);
    else if (e->kind == ElementKind::domain_assumption)
      assumptions.push_back(e);
    else if (e->kind == ElementKind::softgoal)
      softgoals.push_back(e);
  }

  if (!consistent(strict_closure(whole))) {
    r.diagnostics.push_back(
        {Severity::error, codes::c1_inconsistent,
         "holds literals of the candidate are inconsistent under the strict rules",
         "", {}});
    return r;
  }

  DefeasibleProgram prog = program_for(m, c);
  if (opts.zj) {
    if (!classically_consistent(prog)) {
      r.diagnostics.push_back({Severity::error, codes::c1_inconsistent,
                               "fact base is classically inconsistent", "", {}});
      return r;
    }
    for (const Element* e : targets)
      if (!classically_entails(prog, e->holds))
        r.diagnostics.push_back(
            {Severity::error, codes::c1_unwarranted,
             "holds literal of '" + e->id + "' is not classically entailed", e->id, {}});
  } else if (opts.use_reference_engine) {
    auto cons = naive::consequences(prog);
    std::set<Literal> cs(cons.begin(), cons.end());
    for (const Element* e : targets)
      if (!cs.count(e->holds))
        r.diagnostics.push_back({Severity::error, codes::c1_unwarranted,
                                 "holds literal of '" + e->id + "' is not warranted",
                                 e->id, {}});
    for (const Element* k : assumptions)
      if (cs.count(complement(k->holds)))
        r.diagnostics.push_back(
            {Severity::error, codes::c1_assumption_violated,
             "complement of assumption '" + k->id + "' is warranted", k->id, {}});
  } else {
    DefeasibleEngine eng(prog);
    for (const Element* e : targets)
      if (!eng.warranted(e->holds))
        r.diagnostics.push_back({Severity::error, codes::c1_unwarranted,
                                 "holds literal of '" + e->id + "' is not warranted",
                                 e->id, {}});
    for (const Element* k : assumptions)
      if (eng.warranted(complement(k->holds)))
        r.diagnostics.push_back(
            {Severity::error, codes::c1_assumption_violated,
             "complement of assumption '" + k->id + "' is warranted", k->id, {}});
  }

  for (const Element* s : softgoals) {
    bool covered = false;
    for (const JustifiedApproximation& ap : m.approximations)
      if (ap.softgoal == s->id && std::fabs(ap.correlation) >= opts.approx_threshold &&
          c.includes(ap.qc))
        covered = true;
    if (!covered)
      r.diagnostics.push_back(
          {Severity::error, codes::c4_uncovered_softgoal,
           "softgoal '" + s->id +
               "' has no sufficiently correlated quality constraint in the candidate",
           s->id, {}});
  }

  // orderings over included softgoals must be maintained over quality
  // constraints that are themselves part of the candidate
  ResolvedPreferences rp = resolve_preferences(m, opts.approx_threshold);
  std::set<std::string> rp_dropped(rp.dropped.begin(), rp.dropped.end());
  for (const EffectivePreference& ob : rp.obligations) {
    if (!c.includes(ob.preferred) || !c.includes(ob.dispreferred)) continue;
    bool maintained = false;
    for (const JustifiedApproximation& a1 : m.approximations) {
      if (a1.softgoal != ob.preferred ||
          std::fabs(a1.correlation) < opts.approx_threshold || !c.includes(a1.qc))
        continue;
      for (const JustifiedApproximation& a2 : m.approximations) {
        if (a2.softgoal != ob.dispreferred ||
            std::fabs(a2.correlation) < opts.approx_threshold || !c.includes(a2.qc))
          continue;
        if (a1.qc == a2.qc) continue;
        for (const Attitude& at : m.attitudes)
          if (at.form == AttitudeForm::preference && !rp_dropped.count(at.id) &&
              at.preferred == a1.qc && at.dispreferred == a2.qc)
            maintained = true;
      }
    }
    if (!maintained)
      r.diagnostics.push_back(
          {Severity::error, codes::c5_unprojected_preference,
           "softgoal preference '" + ob.id +
               "' is not maintained over the candidate's quality constraints",
           ob.id, {}});
  }

  r.feasible = !has_errors(r.diagnostics);
  return r;
}

bool dominates(const Model& m, const ResolvedPreferences& prefs,
               const Candidate& a, const Candidate& b) {
  // first tier: preference satisfaction over the compulsory core
  bool geq = true, strict = false, tie = true;
  for (const EffectivePreference& p : prefs.retained) {
    int la = level(a.combo, p.preferred);
    int lb = level(b.combo, p.preferred);
    if (la < lb) geq = false;
    if (la > lb) strict = true;
    if (la != lb) tie = false;
  }
  if (geq && strict) return true;
  if (!tie) return false;

  // second tier, only between core-tied candidates: optional content.
  // Optional plans are means, not ends, so they do not count here.
  auto split = [&](const Candidate& c) {
    std::pair<std::vector<std::string>, std::vector<std::string>> fav_dis;
    for (const std::string& id : c.optionals) {
      const Element* e = m.find_element(id);
      if (!e || e->kind == ElementKind::plan || e->kind == ElementKind::softgoal)
        continue;
      (e->disfavored ? fav_dis.second : fav_dis.first).push_back(id);
    }
    return fav_dis;
  };
  auto [fav_a, dis_a] = split(a);
  auto [fav_b, dis_b] = split(b);

  bool sets_geq = subset(fav_b, fav_a) && subset(dis_a, dis_b);
  bool sets_strict = sets_geq && (fav_a != fav_b || dis_a != dis_b);
  bool all_geq = sets_geq;
  bool any_strict = sets_strict;
  for (const EffectivePreference& p : prefs.retained) {
    int la = level(a.optionals, p.preferred);
    int lb = level(b.optionals, p.preferred);
    if (la < lb) all_geq = false;
    if (la > lb) any_strict = true;
  }
  return all_geq && any_strict;
}

SolveResult solve(const Model& m, const SolveOptions& opts) {
  SolveResult r;

  if (opts.zj) {
    std::vector<std::string> blockers;
    if (!m.attitudes.empty()) blockers.push_back("attitudes");
    for (const Element& e : m.elements)
      if (e.kind == ElementKind::softgoal) {
        blockers.push_back("softgoals");
        break;
      }
    for (const Element& e : m.elements)
      if (e.optionality == Optionality::optional) {
        blockers.push_back("optional elements");
        break;
      }
    for (const Rule& ru : m.rules)
      if (ru.strength == RuleStrength::defeasible) {
        blockers.push_back("defeasible rules");
        break;
      }
    if (!m.alternatives.empty()) blockers.push_back("alternatives groups");
    if (!blockers.empty()) {
      r.diagnostics.push_back({Severity::error, codes::mode_not_applicable,
                               "classical mode does not apply to a model with " +
                                   join(blockers, ", "),
                               "", {}});
      return r;
    }
  }

  ResolvedPreferences prefs = resolve_preferences(m, opts.approx_threshold);
  r.diagnostics = prefs.diagnostics;
  if (has_errors(r.diagnostics)) return r;

  if (enumerate_compulsory_combinations(m).empty()) {
    r.diagnostics.push_back({Severity::error, codes::unsat_compulsory_core,
                             "every choice of the compulsory core is inconsistent",
                             "", {}});
    return r;
  }

  bool exhausted = true;
  std::vector<Candidate> cands = enumerate_candidates(m, opts.max_candidates, &exhausted);
  r.exhaustive = exhausted;
  r.candidates_checked = static_cast<long>(cands.size());
  if (!exhausted)
    r.diagnostics.push_back({Severity::error, codes::budget_exceeded,
                             "candidate budget exceeded after " +
                                 std::to_string(cands.size()) + " candidates",
                             "", {}});

  std::vector<char> feasible(cands.size(), 0);
  std::vector<Diagnostics> why(cands.size());
  auto run = [&](size_t i) {
    CandidateCheck ck = check_candidate(m, cands[i], opts);
    feasible[i] = ck.feasible ? 1 : 0;
    why[i] = std::move(ck.diagnostics);
  };
#ifdef _OPENMP
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(cands.size()); ++i)
      run(static_cast<size_t>(i));
  } else {
    for (size_t i = 0; i < cands.size(); ++i) run(i);
  }
#else
  for (size_t i = 0; i < cands.size(); ++i) run(i);
#endif

  std::vector<const Candidate*> feas;
  for (size_t i = 0; i < cands.size(); ++i)
    if (feasible[i]) feas.push_back(&cands[i]);

  if (feas.empty()) {
    if (!cands.empty())
      r.diagnostics.insert(r.diagnostics.end(), why[0].begin(), why[0].end());
    r.diagnostics.push_back({Severity::error, codes::no_solution,
                             "no candidate satisfies the solution conditions", "", {}});
    return r;
  }

  for (const Candidate* c : feas) {
    bool dominated = false;
    for (const Candidate* d : feas)
      if (d != c && dominates(m, prefs, *d, *c)) {
        dominated = true;
        break;
      }
    if (!dominated) r.solutions.push_back(*c);
  }
  std::sort(r.solutions.begin(), r.solutions.end(),
            [&](const Candidate& a, const Candidate& b) {
              if (a.optionals.size() != b.optionals.size())
                return a.optionals.size() > b.optionals.size();
              return signature(m, a) < signature(m, b);
            });
  return r;
}

VerifyResult verify_solution(const Model& m, const Candidate& c,
                             const SolveOptions& opts) {
  VerifyResult v;
  SolveOptions ref = opts;
  ref.use_reference_engine = true;
  ref.parallel = false;

  CandidateCheck ck = check_candidate(m, c, ref);
  if (!ck.feasible) {
    v.diagnostics = std::move(ck.diagnostics);
    v.diagnostics.push_back({Severity::error, codes::no_solution,
                             "candidate fails the solution conditions", "", {}});
    return v;
  }

  ResolvedPreferences prefs = resolve_preferences(m, ref.approx_threshold);
  if (has_errors(prefs.diagnostics)) {
    v.diagnostics = std::move(prefs.diagnostics);
    return v;
  }

  bool exhausted = true;
  std::vector<Candidate> cands = enumerate_candidates(m, ref.max_candidates, &exhausted);
  if (!exhausted) {
    v.diagnostics.push_back({Severity::error, codes::budget_exceeded,
                             "verification budget exceeded", "", {}});
    return v;
  }
  if (std::find(cands.begin(), cands.end(), c) == cands.end()) {
    v.diagnostics.push_back({Severity::error, codes::no_solution,
                             "not a well-formed candidate for this model", "", {}});
    return v;
  }
  for (const Candidate& d : cands) {
    if (d == c) continue;
    if (check_candidate(m, d, ref).feasible && dominates(m, prefs, d, c)) {
      v.diagnostics.push_back({Severity::error, codes::no_solution,
                               "dominated by " + signature(m, d), "", {}});
      return v;
    }
  }
  v.ok = true;
  return v;
}

}  // namespace coreq
