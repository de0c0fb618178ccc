#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "coreq/naive_warrant.hpp"

// Everything here restates the warrant semantics from first principles so a
// disagreement with DefeasibleEngine points at a real bug, not a shared one.

namespace coreq::naive {
namespace {

using LitSet = std::set<Literal>;

LitSet forward_close(const std::vector<Literal>& facts,
                     const std::vector<const Rule*>& usable) {
  LitSet out(facts.begin(), facts.end());
  for (bool again = true; again;) {
    again = false;
    for (const Rule* r : usable) {
      bool all = true;
      for (const Literal& b : r->body) all = all && out.count(b) > 0;
      if (all && !out.count(r->head)) {
        out.insert(r->head);
        again = true;
      }
    }
  }
  return out;
}

bool no_complements(const LitSet& s) {
  for (const Literal& l : s)
    if (s.count(Literal{l.atom, !l.negated}) && !l.negated) return false;
  return true;
}

// Canonical derivation: fact leaf first, then strict rules ascending by id,
// then allowed defeasible rules ascending by id; bodies left to right; no
// literal twice on the path from the root.
std::optional<Derivation> canon_tree(const Literal& goal, const LitSet& facts,
                                     const std::vector<const Rule*>& strict_sorted,
                                     const std::vector<const Rule*>& defeasible_sorted,
                                     std::vector<Literal>& path) {
  if (facts.count(goal)) return Derivation{goal, "", {}};
  if (std::find(path.begin(), path.end(), goal) != path.end()) return std::nullopt;
  path.push_back(goal);
  std::optional<Derivation> result;
  for (const auto* group : {&strict_sorted, &defeasible_sorted}) {
    for (const Rule* r : *group) {
      if (!(r->head == goal)) continue;
      std::vector<Derivation> kids;
      bool all = true;
      for (const Literal& b : r->body) {
        auto k = canon_tree(b, facts, strict_sorted, defeasible_sorted, path);
        if (!k) {
          all = false;
          break;
        }
        kids.push_back(std::move(*k));
      }
      if (all) {
        result = Derivation{goal, r->id, std::move(kids)};
        break;
      }
    }
    if (result) break;
  }
  path.pop_back();
  return result;
}

struct Analysis {
  std::vector<Argument> args;
  std::vector<std::vector<AttackPoint>> points;
  std::vector<std::vector<int>> defeaters;
};

std::set<std::pair<std::string, std::string>> close_priorities(
    const DefeasibleProgram& p) {
  // reachability by repeated expansion
  std::map<std::string, std::set<std::string>> below;
  for (const auto& [hi, lo] : p.priorities) below[hi].insert(lo);
  for (bool again = true; again;) {
    again = false;
    for (auto& [hi, lows] : below) {
      std::set<std::string> add;
      for (const std::string& mid : lows) {
        auto it = below.find(mid);
        if (it == below.end()) continue;
        for (const std::string& lo : it->second)
          if (!lows.count(lo)) add.insert(lo);
      }
      if (!add.empty()) {
        lows.insert(add.begin(), add.end());
        again = true;
      }
    }
  }
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [hi, lows] : below)
    for (const std::string& lo : lows) out.emplace(hi, lo);
  return out;
}

Analysis analyze(const DefeasibleProgram& p) {
  Analysis an;

  std::vector<const Rule*> strict, defeasible;
  for (const Rule& r : p.rules)
    (r.strength == RuleStrength::strict ? strict : defeasible).push_back(&r);
  auto by_id = [](const Rule* a, const Rule* b) { return a->id < b->id; };
  std::sort(strict.begin(), strict.end(), by_id);
  std::sort(defeasible.begin(), defeasible.end(), by_id);
  LitSet facts(p.facts.begin(), p.facts.end());

  // every consistent subset of defeasible rules, with its closure
  const size_t d = defeasible.size();
  struct Entry {
    std::set<std::string> ids;
    LitSet derives;
  };
  std::vector<Entry> entries;
  for (size_t mask = 0; mask < (size_t{1} << d); ++mask) {
    std::vector<const Rule*> usable = strict;
    Entry e;
    for (size_t i = 0; i < d; ++i)
      if (mask & (size_t{1} << i)) {
        usable.push_back(defeasible[i]);
        e.ids.insert(defeasible[i]->id);
      }
    e.derives = forward_close(p.facts, usable);
    if (no_complements(e.derives)) entries.push_back(std::move(e));
  }

  // per literal, the minimal supports among consistent subsets deriving it
  std::vector<Literal> alphabet;
  for (const std::string& a : p.atoms()) {
    alphabet.push_back({a, false});
    alphabet.push_back({a, true});
  }
  for (const Literal& l : alphabet) {
    std::vector<const Entry*> deriving;
    for (const Entry& e : entries)
      if (e.derives.count(l)) deriving.push_back(&e);
    for (const Entry* e : deriving) {
      bool minimal = true;
      for (const Entry* f : deriving) {
        if (f == e) continue;
        if (f->ids.size() < e->ids.size() &&
            std::includes(e->ids.begin(), e->ids.end(), f->ids.begin(), f->ids.end()))
          minimal = false;
      }
      if (!minimal) continue;
      std::vector<const Rule*> allowed;
      for (const Rule* r : defeasible)
        if (e->ids.count(r->id)) allowed.push_back(r);
      std::vector<Literal> path;
      auto tree = canon_tree(l, facts, strict, allowed, path);
      if (!tree) continue;
      Argument a;
      a.conclusion = l;
      a.support.assign(e->ids.begin(), e->ids.end());
      a.tree = std::move(*tree);
      if (std::find(an.args.begin(), an.args.end(), a) == an.args.end())
        an.args.push_back(std::move(a));
    }
  }

  for (const Argument& a : an.args) an.points.push_back(attack_points(a));

  auto prios = close_priorities(p);
  auto weaker = [&](const std::vector<std::string>& sb,
                    const std::vector<std::string>& sub) {
    bool below = false, above = false;
    for (const std::string& rb : sb)
      for (const std::string& ra : sub) {
        if (prios.count({ra, rb})) below = true;
        if (prios.count({rb, ra})) above = true;
      }
    return below && !above;
  };

  an.defeaters.resize(an.args.size());
  for (size_t t = 0; t < an.args.size(); ++t)
    for (size_t b = 0; b < an.args.size(); ++b) {
      if (b == t) continue;
      bool hit = false;
      for (const AttackPoint& ap : an.points[t]) {
        if (!(an.args[b].conclusion == complement(ap.at))) continue;
        if (!weaker(an.args[b].support, ap.sub_support)) {
          hit = true;
          break;
        }
      }
      if (hit) an.defeaters[t].push_back(static_cast<int>(b));
    }
  return an;
}

bool undefeated_rec(const Analysis& an, int i, std::vector<int>& line) {
  line.push_back(i);
  bool ok = true;
  for (int j : an.defeaters[i]) {
    if (std::find(line.begin(), line.end(), j) != line.end()) continue;
    if (undefeated_rec(an, j, line)) {
      ok = false;
      break;
    }
  }
  line.pop_back();
  return ok;
}

bool warranted_in(const Analysis& an, const Literal& l) {
  for (size_t i = 0; i < an.args.size(); ++i) {
    if (!(an.args[i].conclusion == l)) continue;
    std::vector<int> line;
    if (undefeated_rec(an, static_cast<int>(i), line)) return true;
  }
  return false;
}

}  // namespace

std::vector<Argument> all_arguments(const DefeasibleProgram& p) {
  return analyze(p).args;
}

std::vector<Argument> arguments_for(const DefeasibleProgram& p, const Literal& l) {
  std::vector<Argument> out;
  for (Argument& a : analyze(p).args)
    if (a.conclusion == l) out.push_back(std::move(a));
  return out;
}

bool warranted(const DefeasibleProgram& p, const Literal& l) {
  return warranted_in(analyze(p), l);
}

std::vector<Literal> consequences(const DefeasibleProgram& p) {
  Analysis an = analyze(p);
  std::vector<Literal> out;
  for (const std::string& a : p.atoms())
    for (bool neg : {false, true}) {
      Literal l{a, neg};
      if (warranted_in(an, l)) out.push_back(l);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coreq::naive
