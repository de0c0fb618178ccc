#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coreq/defeasible.hpp"
#include "coreq/generate.hpp"
#include "coreq/naive_warrant.hpp"

using namespace coreq;

namespace {

Literal lit(const std::string& atom) { return Literal{atom, false}; }
Literal neg(const std::string& atom) { return Literal{atom, true}; }

Rule rule(const std::string& id, RuleStrength st, std::vector<Literal> body, Literal head) {
  Rule r;
  r.id = id;
  r.strength = st;
  r.body = std::move(body);
  r.head = head;
  return r;
}

Rule strict(const std::string& id, std::vector<Literal> body, Literal head) {
  return rule(id, RuleStrength::strict, std::move(body), head);
}

Rule defeasible(const std::string& id, std::vector<Literal> body, Literal head) {
  return rule(id, RuleStrength::defeasible, std::move(body), head);
}

std::vector<std::string> supports_for(const DefeasibleEngine& e, const Literal& l) {
  std::vector<std::string> out;
  for (const Argument* a : e.arguments_for(l)) {
    std::string s;
    for (const std::string& id : a->support) {
      if (!s.empty()) s += ",";
      s += id;
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every inner node of a dialectical tree must be marked undefeated exactly
// when all of its children are defeated.
bool marking_consistent(const DialecticalNode& n) {
  bool all_children_defeated = true;
  for (const DialecticalNode& c : n.children) {
    if (!marking_consistent(c)) return false;
    if (c.undefeated) all_children_defeated = false;
  }
  return n.undefeated == all_children_defeated;
}

}  // namespace

TEST_CASE("strict closure and consistency") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {strict("r1", {lit("a")}, lit("b")), strict("r2", {lit("b")}, lit("c")),
             strict("r3", {lit("z")}, lit("w"))};

  std::set<Literal> cl = strict_closure(p);
  CHECK(cl == std::set<Literal>{lit("a"), lit("b"), lit("c")});
  CHECK(consistent(cl));

  CHECK(consistent(std::set<Literal>{lit("a"), neg("b")}));
  CHECK_FALSE(consistent(std::set<Literal>{lit("a"), neg("a")}));
}

TEST_CASE("closure with a chosen defeasible subset") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("d1", {lit("a")}, lit("b")), strict("r1", {lit("b")}, lit("c")),
             defeasible("d2", {lit("a")}, lit("e"))};

  CHECK(closure(p, {}) == std::set<Literal>{lit("a")});
  CHECK(closure(p, {"d1"}) == std::set<Literal>{lit("a"), lit("b"), lit("c")});
  CHECK(closure(p, {"d1", "d2"}) ==
        std::set<Literal>{lit("a"), lit("b"), lit("c"), lit("e")});
}

TEST_CASE("base consistency") {
  DefeasibleProgram ok;
  ok.facts = {lit("a")};
  CHECK(DefeasibleEngine(ok).base_consistent());

  DefeasibleProgram clash;
  clash.facts = {lit("a"), neg("a")};
  CHECK_FALSE(DefeasibleEngine(clash).base_consistent());

  DefeasibleProgram derived_clash;
  derived_clash.facts = {lit("a")};
  derived_clash.rules = {strict("r1", {lit("a")}, lit("b")),
                         strict("r2", {lit("a")}, neg("b"))};
  CHECK_FALSE(DefeasibleEngine(derived_clash).base_consistent());
}

TEST_CASE("inconsistent base warrants nothing") {
  DefeasibleProgram p;
  p.facts = {lit("a"), neg("a")};
  p.rules = {defeasible("d1", {lit("a")}, lit("b"))};
  DefeasibleEngine e(p);
  CHECK_FALSE(e.warranted(lit("a")));
  CHECK_FALSE(e.warranted(lit("b")));
  CHECK(e.consequences().empty());
}

TEST_CASE("arguments for a fact") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  DefeasibleEngine e(p);

  auto args = e.arguments_for(lit("a"));
  REQUIRE(args.size() == 1);
  CHECK(args[0]->support.empty());
  CHECK(args[0]->conclusion == lit("a"));
  CHECK(args[0]->tree.rule.empty());  // fact leaf

  CHECK(e.arguments_for(lit("b")).empty());
  CHECK(e.arguments_for(neg("a")).empty());
}

TEST_CASE("argument through a single defeasible rule") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b"))};
  DefeasibleEngine e(p);

  auto args = e.arguments_for(lit("b"));
  REQUIRE(args.size() == 1);
  CHECK(args[0]->support == std::vector<std::string>{"r1"});
  CHECK(args[0]->tree.rule == "r1");
  REQUIRE(args[0]->tree.children.size() == 1);
  CHECK(args[0]->tree.children[0].lit == lit("a"));
}

TEST_CASE("two distinct arguments for the same conclusion") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("b")}, lit("c")),
             defeasible("r3", {lit("a")}, lit("c"))};
  DefeasibleEngine e(p);

  CHECK(supports_for(e, lit("c")) == std::vector<std::string>{"r1,r2", "r3"});
  CHECK(e.warranted(lit("c")));
}

TEST_CASE("argument supports are minimal") {
  DefeasibleProgram p;
  p.facts = {lit("a"), lit("b")};
  p.rules = {defeasible("r1", {lit("a")}, lit("c")),
             defeasible("r2", {lit("b")}, lit("d"))};
  DefeasibleEngine e(p);

  // r2 is irrelevant to c, so no argument for c may carry it.
  auto args = e.arguments_for(lit("c"));
  REQUIRE(args.size() == 1);
  CHECK(args[0]->support == std::vector<std::string>{"r1"});
}

TEST_CASE("arguments must be internally consistent") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             strict("r2", {lit("b")}, neg("a"))};
  // Using r1 would strictly derive ~a alongside the fact a.
  DefeasibleEngine e(p);
  CHECK(e.arguments_for(lit("b")).empty());
  CHECK_FALSE(e.warranted(lit("b")));
}

TEST_CASE("attack points enumerate subtree conclusions") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("b")}, lit("c"))};
  DefeasibleEngine e(p);

  auto args = e.arguments_for(lit("c"));
  REQUIRE(args.size() == 1);
  auto pts = attack_points(*args[0]);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].at == lit("c"));
  CHECK(pts[0].sub_support == std::vector<std::string>{"r1", "r2"});
  CHECK(pts[1].at == lit("b"));
  CHECK(pts[1].sub_support == std::vector<std::string>{"r1"});
  CHECK(pts[2].at == lit("a"));
  CHECK(pts[2].sub_support.empty());
}

TEST_CASE("symmetric conflict blocks both conclusions") {
  DefeasibleProgram p;
  p.facts = {lit("a"), lit("c")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("c")}, neg("b"))};
  DefeasibleEngine e(p);

  CHECK_FALSE(e.warranted(lit("b")));
  CHECK_FALSE(e.warranted(neg("b")));
  CHECK(e.warranted(lit("a")));
  CHECK(e.warranted(lit("c")));

  Explanation ex = e.explain(lit("b"));
  CHECK_FALSE(ex.warranted);
  REQUIRE(ex.trees.size() == 1);
  CHECK_FALSE(ex.trees[0].undefeated);
  REQUIRE(ex.trees[0].children.size() == 1);
  CHECK(ex.trees[0].children[0].argument.conclusion == neg("b"));
  CHECK(ex.trees[0].children[0].undefeated);
}

TEST_CASE("priority resolves a pairwise conflict") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("a")}, neg("b"))};
  p.priorities = {{"r1", "r2"}};
  DefeasibleEngine e(p);

  CHECK(e.warranted(lit("b")));
  CHECK_FALSE(e.warranted(neg("b")));

  // The weaker argument cannot even defeat the stronger one.
  Explanation ex = e.explain(lit("b"));
  REQUIRE(ex.trees.size() == 1);
  CHECK(ex.trees[0].children.empty());
  CHECK(ex.trees[0].undefeated);
}

TEST_CASE("priority closure is transitive") {
  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("a")}, lit("c")),
             defeasible("r3", {lit("a")}, neg("b"))};
  p.priorities = {{"r1", "r2"}, {"r2", "r3"}};
  DefeasibleEngine e(p);

  CHECK(e.higher_priority("r1", "r2"));
  CHECK(e.higher_priority("r2", "r3"));
  CHECK(e.higher_priority("r1", "r3"));
  CHECK_FALSE(e.higher_priority("r3", "r1"));
  CHECK_FALSE(e.higher_priority("r1", "r1"));

  // r1 > r3 through the chain, so b survives the clash with ~b.
  CHECK(e.warranted(lit("b")));
  CHECK_FALSE(e.warranted(neg("b")));
}

TEST_CASE("unrelated conclusions are untouched by a conflict") {
  DefeasibleProgram p;
  p.facts = {lit("a"), lit("c"), lit("x")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("c")}, neg("b")),
             defeasible("r3", {lit("x")}, lit("y"))};
  DefeasibleEngine e(p);

  CHECK_FALSE(e.warranted(lit("b")));
  CHECK(e.warranted(lit("y")));
}

TEST_CASE("defeated attacker reinstates the original argument") {
  DefeasibleProgram p;
  p.facts = {lit("a"), lit("c"), lit("e")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b")),
             defeasible("r2", {lit("c")}, lit("d")),
             defeasible("r3", {lit("d")}, neg("b")),
             defeasible("r4", {lit("e")}, neg("d"))};
  p.priorities = {{"r4", "r2"}};
  DefeasibleEngine e(p);

  // {r2,r3} attacks {r1} at b, but {r4} undercuts it at d with higher
  // priority, so the attack collapses and b is reinstated.
  CHECK(e.warranted(lit("b")));
  CHECK_FALSE(e.warranted(neg("b")));
  CHECK_FALSE(e.warranted(lit("d")));
  CHECK(e.warranted(neg("d")));

  Explanation ex = e.explain(lit("b"));
  REQUIRE(ex.trees.size() == 1);
  const DialecticalNode& root = ex.trees[0];
  CHECK(root.undefeated);
  REQUIRE(root.children.size() == 1);
  CHECK(root.children[0].argument.support == std::vector<std::string>{"r2", "r3"});
  CHECK_FALSE(root.children[0].undefeated);
  REQUIRE(root.children[0].children.size() == 1);
  CHECK(root.children[0].children[0].argument.support == std::vector<std::string>{"r4"});
  CHECK(root.children[0].children[0].undefeated);
}

TEST_CASE("adding defeasible knowledge can retract a conclusion") {
  DefeasibleProgram before;
  before.facts = {lit("a")};
  before.rules = {defeasible("r1", {lit("a")}, lit("b"))};
  CHECK(DefeasibleEngine(before).warranted(lit("b")));

  DefeasibleProgram after = before;
  after.facts.push_back(lit("c"));
  after.rules.push_back(defeasible("r2", {lit("c")}, neg("b")));
  after.priorities = {{"r2", "r1"}};
  DefeasibleEngine e(after);
  CHECK_FALSE(e.warranted(lit("b")));
  CHECK(e.warranted(neg("b")));
}

TEST_CASE("consequences of small programs") {
  DefeasibleProgram empty;
  CHECK(DefeasibleEngine(empty).consequences().empty());

  DefeasibleProgram p;
  p.facts = {lit("a")};
  p.rules = {defeasible("r1", {lit("a")}, lit("b"))};
  CHECK(DefeasibleEngine(p).consequences() == std::vector<Literal>{lit("a"), lit("b")});
}

TEST_CASE("strict-only programs reduce to the strict closure") {
  std::mt19937_64 rng(7);
  ProgramGenOptions o;
  o.atoms = 6;
  o.defeasible_rules = 0;
  o.priorities = 0;
  for (int i = 0; i < 40; ++i) {
    DefeasibleProgram p = random_program(rng, o);
    DefeasibleEngine e(p);
    if (!e.base_consistent()) continue;
    std::set<Literal> cl = strict_closure(p);
    std::vector<Literal> expect(cl.begin(), cl.end());
    CHECK(e.consequences() == expect);
  }
}

TEST_CASE("strict additions preserve strict conclusions") {
  // On the strict fragment the closure only grows when consistent facts are
  // added; this is the monotone base the defeasible layer departs from.
  std::mt19937_64 rng(11);
  ProgramGenOptions o;
  o.atoms = 6;
  o.defeasible_rules = 0;
  o.priorities = 0;
  for (int i = 0; i < 40; ++i) {
    DefeasibleProgram p = random_program(rng, o);
    std::set<Literal> base = strict_closure(p);
    if (!consistent(base)) continue;

    DefeasibleProgram grown = p;
    grown.facts.push_back(lit("fresh_" + std::to_string(i)));
    std::set<Literal> wider = strict_closure(grown);
    if (!consistent(wider)) continue;
    for (const Literal& l : base) CHECK(wider.count(l) == 1);
  }
}

TEST_CASE("explain marks nodes consistently and agrees with warrant") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    DefeasibleProgram p = random_program(rng);
    DefeasibleEngine e(p);
    if (!e.base_consistent()) continue;
    for (const std::string& atom : p.atoms()) {
      for (Literal q : {lit(atom), neg(atom)}) {
        Explanation ex = e.explain(q);
        CHECK(ex.query == q);
        CHECK(ex.warranted == e.warranted(q));
        bool any_undefeated = false;
        for (const DialecticalNode& t : ex.trees) {
          CHECK(marking_consistent(t));
          if (t.undefeated) any_undefeated = true;
        }
        CHECK(ex.warranted == any_undefeated);
      }
    }
  }
}

TEST_CASE("engine agrees with the brute-force reference") {
  std::mt19937_64 rng(20260823);
  int compared = 0;
  for (int i = 0; i < 120; ++i) {
    DefeasibleProgram p = random_program(rng);
    DefeasibleEngine e(p);
    if (!e.base_consistent()) continue;
    ++compared;

    // identical argument universes
    std::vector<Argument> ref = naive::all_arguments(p);
    std::vector<Argument> got = e.arguments();
    auto key = [](const Argument& a) {
      std::string s = to_string(a.conclusion) + "|";
      for (const std::string& id : a.support) s += id + ",";
      return s;
    };
    std::vector<std::string> ka, kb;
    for (const Argument& a : ref) ka.push_back(key(a));
    for (const Argument& a : got) kb.push_back(key(a));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    CHECK(ka == kb);

    // identical warrant verdicts on the whole alphabet
    for (const std::string& atom : p.atoms()) {
      for (Literal q : {lit(atom), neg(atom)}) {
        CHECK(e.warranted(q) == naive::warranted(p, q));
      }
    }
    CHECK(e.consequences() == naive::consequences(p));
  }
  CHECK(compared >= 60);
}

TEST_CASE("warranted sets are conflict free") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 80; ++i) {
    DefeasibleProgram p = random_program(rng);
    DefeasibleEngine e(p);
    if (!e.base_consistent()) continue;
    std::vector<Literal> cons = e.consequences();
    std::set<Literal> seen(cons.begin(), cons.end());
    for (const Literal& l : cons) CHECK(seen.count(complement(l)) == 0);
  }
}

TEST_CASE("parallel and serial consequence paths agree") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 40; ++i) {
    DefeasibleProgram p = random_program(rng);
    DefeasibleEngine e(p);
    CHECK(e.consequences() == e.consequences_serial());
  }
}
