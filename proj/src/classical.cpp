#include <algorithm>
#include <map>
#include <vector>

#include "coreq/classical.hpp"

namespace coreq {
namespace {

// clause literal: +v true, -v false, variables numbered from 1
using Clause = std::vector<int>;

struct Cnf {
  std::map<std::string, int> vars;
  std::vector<Clause> clauses;

  int var(const std::string& atom) {
    auto [it, fresh] = vars.emplace(atom, static_cast<int>(vars.size()) + 1);
    (void)fresh;
    return it->second;
  }

  int lit(const Literal& l) { return l.negated ? -var(l.atom) : var(l.atom); }
};

Cnf encode(const DefeasibleProgram& p) {
  Cnf cnf;
  for (const Literal& f : p.facts) cnf.clauses.push_back({cnf.lit(f)});
  for (const Rule& r : p.rules) {
    Clause c;
    for (const Literal& b : r.body) c.push_back(-cnf.lit(b));
    c.push_back(cnf.lit(r.head));
    cnf.clauses.push_back(std::move(c));
  }
  return cnf;
}

// assign: 0 unknown, +1 true, -1 false, indexed by variable
bool sat(const std::vector<Clause>& clauses, std::vector<int>& assign) {
  // unit propagation to fixpoint
  std::vector<int> trail;
  for (bool again = true; again;) {
    again = false;
    for (const Clause& c : clauses) {
      int unassigned = 0, last = 0;
      bool satisfied = false;
      for (int l : c) {
        int v = assign[std::abs(l)];
        if (v == 0) {
          ++unassigned;
          last = l;
        } else if ((l > 0) == (v > 0)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) {
        for (int v : trail) assign[v] = 0;
        return false;  // conflict
      }
      if (unassigned == 1) {
        assign[std::abs(last)] = last > 0 ? 1 : -1;
        trail.push_back(std::abs(last));
        again = true;
      }
    }
  }
  int branch = 0;
  for (size_t v = 1; v < assign.size(); ++v)
    if (assign[v] == 0) {
      branch = static_cast<int>(v);
      break;
    }
  if (branch == 0) return true;  // complete assignment, no conflict
  for (int value : {1, -1}) {
    assign[branch] = value;
    if (sat(clauses, assign)) return true;
    assign[branch] = 0;
  }
  for (int v : trail) assign[v] = 0;
  return false;
}

bool satisfiable(Cnf cnf) {
  std::vector<int> assign(cnf.vars.size() + 1, 0);
  return sat(cnf.clauses, assign);
}

}  // namespace

bool classically_consistent(const DefeasibleProgram& p) {
  return satisfiable(encode(p));
}

bool classically_entails(const DefeasibleProgram& p, const Literal& l) {
  Cnf cnf = encode(p);
  cnf.clauses.push_back({-cnf.lit(l)});
  return !satisfiable(cnf);
}

}  // namespace coreq
