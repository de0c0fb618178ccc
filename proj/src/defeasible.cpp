#include <algorithm>
#include <map>
#include <optional>

#include "coreq/defeasible.hpp"

namespace coreq {
namespace {

// Drop duplicates and any set with a proper subset in the collection.
std::vector<std::set<int>> minimal_only(std::vector<std::set<int>> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::set<int>> out;
  for (size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = sets[j].size() < sets[i].size() &&
                  std::includes(sets[i].begin(), sets[i].end(),
                                sets[j].begin(), sets[j].end());
    }
    if (!dominated) out.push_back(sets[i]);
  }
  return out;
}

// Enumerates the minimal defeasible-rule sets able to derive a literal.
// Sibling subgoals do not constrain each other, so each body literal can be
// solved independently and the results crossed.
class SupportEnumerator {
 public:
  explicit SupportEnumerator(const DefeasibleProgram& p) : p_(p) {
    facts_.insert(p.facts.begin(), p.facts.end());
    for (size_t i = 0; i < p.rules.size(); ++i)
      by_head_[p.rules[i].head].push_back(static_cast<int>(i));
  }

  std::vector<std::set<int>> supports(const Literal& lit) {
    std::set<Literal> path;
    return derive(lit, path);
  }

 private:
  std::vector<std::set<int>> derive(const Literal& lit, std::set<Literal>& path) {
    if (facts_.count(lit)) return {{}};
    if (path.count(lit)) return {};
    std::vector<std::set<int>> out;
    auto it = by_head_.find(lit);
    if (it == by_head_.end()) return out;
    path.insert(lit);
    for (int ri : it->second) {
      const Rule& r = p_.rules[ri];
      std::vector<std::set<int>> partial = {{}};
      for (const Literal& b : r.body) {
        auto bs = derive(b, path);
        std::vector<std::set<int>> next;
        for (const auto& s1 : partial)
          for (const auto& s2 : bs) {
            std::set<int> u = s1;
            u.insert(s2.begin(), s2.end());
            next.push_back(std::move(u));
          }
        partial = minimal_only(std::move(next));
        if (partial.empty()) break;
      }
      if (r.strength == RuleStrength::defeasible)
        for (auto& s : partial) s.insert(ri);
      out.insert(out.end(), partial.begin(), partial.end());
    }
    path.erase(lit);
    return minimal_only(std::move(out));
  }

  const DefeasibleProgram& p_;
  std::set<Literal> facts_;
  std::map<Literal, std::vector<int>> by_head_;
};

// Canonical derivation tree over a fixed support; see the header for the
// choice order. Sibling independence makes the greedy expansion equal to the
// first tree in full backtracking order.
class CanonicalBuilder {
 public:
  CanonicalBuilder(const DefeasibleProgram& p, const std::set<std::string>& allowed)
      : p_(p), allowed_(allowed) {
    facts_.insert(p.facts.begin(), p.facts.end());
    for (const Rule& r : p.rules) {
      if (r.strength == RuleStrength::strict)
        strict_by_head_[r.head].push_back(&r);
      else if (allowed_.count(r.id))
        defeasible_by_head_[r.head].push_back(&r);
    }
    auto by_id = [](const Rule* a, const Rule* b) { return a->id < b->id; };
    for (auto& [h, v] : strict_by_head_) std::sort(v.begin(), v.end(), by_id);
    for (auto& [h, v] : defeasible_by_head_) std::sort(v.begin(), v.end(), by_id);
  }

  std::optional<Derivation> build(const Literal& lit) {
    std::set<Literal> path;
    return expand(lit, path);
  }

 private:
  std::optional<Derivation> expand(const Literal& lit, std::set<Literal>& path) {
    if (facts_.count(lit)) return Derivation{lit, "", {}};
    if (path.count(lit)) return std::nullopt;
    path.insert(lit);
    std::optional<Derivation> found;
    for (const auto* table : {&strict_by_head_, &defeasible_by_head_}) {
      auto it = table->find(lit);
      if (it == table->end()) continue;
      for (const Rule* r : it->second) {
        std::vector<Derivation> kids;
        bool ok = true;
        for (const Literal& b : r->body) {
          auto k = expand(b, path);
          if (!k) {
            ok = false;
            break;
          }
          kids.push_back(std::move(*k));
        }
        if (ok) {
          found = Derivation{lit, r->id, std::move(kids)};
          break;
        }
      }
      if (found) break;
    }
    path.erase(lit);
    return found;
  }

  const DefeasibleProgram& p_;
  const std::set<std::string>& allowed_;
  std::set<Literal> facts_;
  std::map<Literal, std::vector<const Rule*>> strict_by_head_;
  std::map<Literal, std::vector<const Rule*>> defeasible_by_head_;
};

void collect_sub_support(const Derivation& d, const DefeasibleProgram& p,
                         std::set<std::string>& out) {
  if (!d.rule.empty()) {
    for (const Rule& r : p.rules)
      if (r.id == d.rule && r.strength == RuleStrength::defeasible) out.insert(r.id);
  }
  for (const Derivation& c : d.children) collect_sub_support(c, p, out);
}

}  // namespace

std::vector<std::string> DefeasibleProgram::atoms() const {
  std::vector<std::string> out;
  for (const Literal& f : facts) out.push_back(f.atom);
  for (const Rule& r : rules) {
    out.push_back(r.head.atom);
    for (const Literal& b : r.body) out.push_back(b.atom);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<Literal> closure(const DefeasibleProgram& p,
                          const std::set<std::string>& defeasible_subset) {
  std::set<Literal> out(p.facts.begin(), p.facts.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : p.rules) {
      if (r.strength == RuleStrength::defeasible && !defeasible_subset.count(r.id))
        continue;
      if (out.count(r.head)) continue;
      bool fire = true;
      for (const Literal& b : r.body)
        if (!out.count(b)) {
          fire = false;
          break;
        }
      if (fire) {
        out.insert(r.head);
        changed = true;
      }
    }
  }
  return out;
}

std::set<Literal> strict_closure(const DefeasibleProgram& p) { return closure(p, {}); }

bool consistent(const std::set<Literal>& lits) {
  for (const Literal& l : lits)
    if (!l.negated && lits.count(complement(l))) return false;
  return true;
}

std::vector<AttackPoint> attack_points(const Argument& a) {
  std::vector<AttackPoint> out;
  std::set<Literal> seen;
  // preorder walk; first occurrence of each literal wins
  std::vector<const Derivation*> stack = {&a.tree};
  std::vector<const Derivation*> order;
  while (!stack.empty()) {
    const Derivation* d = stack.back();
    stack.pop_back();
    order.push_back(d);
    for (auto it = d->children.rbegin(); it != d->children.rend(); ++it)
      stack.push_back(&*it);
  }
  for (const Derivation* d : order) {
    if (seen.count(d->lit)) continue;
    seen.insert(d->lit);
    AttackPoint ap;
    ap.at = d->lit;
    std::set<std::string> sub;
    // the support rules below this node, defeasible only
    std::vector<const Derivation*> walk = {d};
    while (!walk.empty()) {
      const Derivation* n = walk.back();
      walk.pop_back();
      if (!n->rule.empty()) sub.insert(n->rule);
      for (const Derivation& c : n->children) walk.push_back(&c);
    }
    // keep only ids that are part of the argument's defeasible support
    for (const std::string& id : a.support)
      if (sub.count(id)) ap.sub_support.push_back(id);
    out.push_back(std::move(ap));
  }
  return out;
}

DefeasibleEngine::DefeasibleEngine(DefeasibleProgram p) : prog_(std::move(p)) {
  // transitive closure of the declared priorities
  priority_closure_.insert(prog_.priorities.begin(), prog_.priorities.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : priority_closure_)
      for (const auto& [c, d] : priority_closure_)
        if (b == c && !priority_closure_.count({a, d})) add.emplace_back(a, d);
    for (auto& e : add)
      grew |= priority_closure_.insert(std::move(e)).second;
  }

  base_consistent_ = consistent(strict_closure(prog_));

  SupportEnumerator en(prog_);
  for (const std::string& atom : prog_.atoms()) {
    for (bool neg : {false, true}) {
      Literal l{atom, neg};
      for (const std::set<int>& s : en.supports(l)) {
        std::set<std::string> ids;
        for (int ri : s) ids.insert(prog_.rules[ri].id);
        if (!consistent(closure(prog_, ids))) continue;
        CanonicalBuilder cb(prog_, ids);
        auto tree = cb.build(l);
        if (!tree) continue;  // unreachable for a true support; stay safe
        Argument arg;
        arg.conclusion = l;
        arg.support.assign(ids.begin(), ids.end());
        arg.tree = std::move(*tree);
        args_.push_back(std::move(arg));
      }
    }
  }

  points_.resize(args_.size());
  for (size_t i = 0; i < args_.size(); ++i) points_[i] = attack_points(args_[i]);

  defeaters_.resize(args_.size());
  for (size_t t = 0; t < args_.size(); ++t)
    for (size_t a = 0; a < args_.size(); ++a)
      if (a != t && defeats(static_cast<int>(a), static_cast<int>(t)))
        defeaters_[t].push_back(static_cast<int>(a));
}

bool DefeasibleEngine::higher_priority(const std::string& a, const std::string& b) const {
  return priority_closure_.count({a, b}) != 0;
}

bool DefeasibleEngine::defeats(int attacker, int target) const {
  const Argument& b = args_[attacker];
  for (const AttackPoint& ap : points_[target]) {
    if (b.conclusion != complement(ap.at)) continue;
    // strictly weaker: some rule of the attacker sits below a rule of the
    // attacked sub-argument and none sits above
    bool below = false, above = false;
    for (const std::string& rb : b.support)
      for (const std::string& ra : ap.sub_support) {
        if (higher_priority(ra, rb)) below = true;
        if (higher_priority(rb, ra)) above = true;
      }
    if (!(below && !above)) return true;
  }
  return false;
}

bool DefeasibleEngine::undefeated(int arg, std::vector<int>& line) const {
  line.push_back(arg);
  bool result = true;
  for (int j : defeaters_[arg]) {
    if (std::find(line.begin(), line.end(), j) != line.end()) continue;
    if (undefeated(j, line)) {
      result = false;
      break;
    }
  }
  line.pop_back();
  return result;
}

std::vector<const Argument*> DefeasibleEngine::arguments_for(const Literal& l) const {
  std::vector<const Argument*> out;
  for (const Argument& a : args_)
    if (a.conclusion == l) out.push_back(&a);
  return out;
}

bool DefeasibleEngine::warranted(const Literal& l) const {
  for (size_t i = 0; i < args_.size(); ++i) {
    if (args_[i].conclusion != l) continue;
    std::vector<int> line;
    if (undefeated(static_cast<int>(i), line)) return true;
  }
  return false;
}

std::vector<Literal> DefeasibleEngine::consequences_serial() const {
  std::vector<Literal> queries;
  for (const std::string& atom : prog_.atoms()) {
    queries.push_back({atom, false});
    queries.push_back({atom, true});
  }
  std::vector<Literal> out;
  for (const Literal& q : queries)
    if (warranted(q)) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Literal> DefeasibleEngine::consequences() const {
#ifdef _OPENMP
  std::vector<Literal> queries;
  for (const std::string& atom : prog_.atoms()) {
    queries.push_back({atom, false});
    queries.push_back({atom, true});
  }
  std::vector<char> flag(queries.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(queries.size()); ++i)
    flag[i] = warranted(queries[i]) ? 1 : 0;
  std::vector<Literal> out;
  for (size_t i = 0; i < queries.size(); ++i)
    if (flag[i]) out.push_back(queries[i]);
  std::sort(out.begin(), out.end());
  return out;
#else
  return consequences_serial();
#endif
}

DialecticalNode DefeasibleEngine::build_node(int arg, std::vector<int>& line) const {
  DialecticalNode node;
  node.argument = args_[arg];
  line.push_back(arg);
  bool any_undefeated_child = false;
  for (int j : defeaters_[arg]) {
    if (std::find(line.begin(), line.end(), j) != line.end()) continue;
    DialecticalNode child = build_node(j, line);
    any_undefeated_child |= child.undefeated;
    node.children.push_back(std::move(child));
  }
  line.pop_back();
  node.undefeated = !any_undefeated_child;
  return node;
}

Explanation DefeasibleEngine::explain(const Literal& l) const {
  Explanation ex;
  ex.query = l;
  for (size_t i = 0; i < args_.size(); ++i) {
    if (args_[i].conclusion != l) continue;
    std::vector<int> line;
    DialecticalNode n = build_node(static_cast<int>(i), line);
    ex.warranted |= n.undefeated;
    ex.trees.push_back(std::move(n));
  }
  return ex;
}

}  // namespace coreq
