// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Thresholds, counts and time limits are pinned here on purpose.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coreq/classical.hpp"
#include "coreq/defeasible.hpp"
#include "coreq/dsl.hpp"
#include "coreq/generate.hpp"
#include "coreq/naive_warrant.hpp"
#include "coreq/solver.hpp"
#include "coreq/speech_acts.hpp"

using namespace coreq;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Literal lit(const std::string& a) { return Literal{a, false}; }
Literal neg(const std::string& a) { return Literal{a, true}; }

bool has_code(const Diagnostics& d, const std::string& code) {
  return std::any_of(d.begin(), d.end(),
                     [&](const Diagnostic& x) { return x.code == code; });
}

// ---------------------------------------------------------------- criterion 1

struct ExpectedElement {
  std::string id;
  ElementKind kind;
  std::string holds;
};

struct ExpectedAttitude {
  std::string id;
  AttitudeForm form;
  std::string a, b;  // evaluation: target, sign; preference: endpoints
};

bool criterion1() {
  auto ur = parse_utterances(slurp("flight_utterances.rqu"));
  auto rr = parse_model(slurp("flight_registry.rqm"));
  if (!ur.ok() || !rr.ok()) return false;
  PipelineResult pr = classify_utterances(ur.set, rr.model);
  if (!pr.ok()) return false;

  const std::vector<ExpectedElement> elements = {
      {"ex1", ElementKind::domain_assumption, "shared_system_used"},
      {"ex2", ElementKind::goal, "flight_booked"},
      {"ex3", ElementKind::plan, "search_flights"},
      {"ex5", ElementKind::domain_assumption, "airline_flights_listed"},
      {"ex6", ElementKind::goal, "booking_confirmed"},
      {"ex7", ElementKind::quality_constraint, "few_screens"},
      {"ex8", ElementKind::softgoal, "convenient_booking"},
  };
  const std::vector<ExpectedAttitude> attitudes = {
      {"ex4", AttitudeForm::evaluation, "q_quick_confirm", "favor"},
      {"ex9", AttitudeForm::evaluation, "ex1", "disfavor"},
      {"ex10", AttitudeForm::preference, "p_sys_confirm", "p_person_confirm"},
      {"ex11", AttitudeForm::evaluation, "g_offers", "favor"},
      {"ex12", AttitudeForm::preference, "q_multi_screen", "q_single_screen"},
      {"ex13", AttitudeForm::preference, "sg_convenient", "sg_fast"},
      {"ex14", AttitudeForm::preference, "g_etickets", "g_paper_tickets"},
      {"ex15", AttitudeForm::preference, "g_paper_tickets", "g_etickets"},
  };

  if (pr.elements.size() != elements.size()) return false;
  if (pr.attitudes.size() != attitudes.size()) return false;

  for (const ExpectedElement& want : elements) {
    auto it = std::find_if(pr.elements.begin(), pr.elements.end(),
                           [&](const Element& e) { return e.id == want.id; });
    if (it == pr.elements.end()) return false;
    if (it->kind != want.kind) return false;
    if (to_string(it->holds) != want.holds) return false;
    if (it->source_utterance != want.id) return false;
  }
  for (const ExpectedAttitude& want : attitudes) {
    auto it = std::find_if(pr.attitudes.begin(), pr.attitudes.end(),
                           [&](const Attitude& a) { return a.id == want.id; });
    if (it == pr.attitudes.end()) return false;
    if (it->form != want.form) return false;
    if (want.form == AttitudeForm::evaluation) {
      if (it->target != want.a) return false;
      if (to_string(it->sign) != want.b) return false;
    } else {
      if (it->preferred != want.a) return false;
      if (it->dispreferred != want.b) return false;
    }
  }

  // the quality constraint keeps its measurement annotation
  auto q = std::find_if(pr.elements.begin(), pr.elements.end(),
                        [](const Element& e) { return e.id == "ex7"; });
  return q->quality == "screens" && q->constraint_expr == "value <= 5";
}

// ----------------------------------------------------- criteria 2 and 4 share
// the same random programs: at most 8 atoms, at most 12 rules

bool criterion2_and_4(bool& consistency_ok) {
  std::mt19937_64 rng(424242);
  ProgramGenOptions o;  // 8 atoms, 4 strict + 8 defeasible rules
  int programs = 0;
  bool equal = true;
  consistency_ok = true;
  while (programs < 100) {
    DefeasibleProgram p = random_program(rng, o);
    DefeasibleEngine e(p);
    if (!e.base_consistent()) continue;
    ++programs;

    std::set<Literal> warranted_set;
    for (const std::string& atom : p.atoms()) {
      for (Literal q : {lit(atom), neg(atom)}) {
        bool fast = e.warranted(q);
        if (fast != naive::warranted(p, q)) equal = false;
        if (fast) warranted_set.insert(q);
      }
    }
    for (const Literal& l : warranted_set)
      if (warranted_set.count(complement(l))) consistency_ok = false;
  }
  return equal;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  DefeasibleProgram before;
  before.facts = {lit("a")};
  Rule r1;
  r1.id = "r1";
  r1.body = {lit("a")};
  r1.head = lit("b");
  r1.strength = RuleStrength::defeasible;
  before.rules = {r1};
  if (!DefeasibleEngine(before).warranted(lit("b"))) return false;

  DefeasibleProgram after = before;
  after.facts.push_back(lit("c"));
  Rule r2;
  r2.id = "r2";
  r2.body = {lit("c")};
  r2.head = neg("b");
  r2.strength = RuleStrength::defeasible;
  after.rules.push_back(r2);
  after.priorities = {{"r2", "r1"}};
  return !DefeasibleEngine(after).warranted(lit("b"));
}

// ---------------------------------------------------------------- criterion 5

// Truth-table entailment, written here so the comparison is three-way
// independent: generator-built model, solver verdicts, and this oracle.
struct TruthTable {
  std::vector<std::string> atoms;
  const DefeasibleProgram& p;

  explicit TruthTable(const DefeasibleProgram& prog) : p(prog) { atoms = prog.atoms(); }

  bool holds(const Literal& l, unsigned long mask) const {
    auto it = std::find(atoms.begin(), atoms.end(), l.atom);
    if (it == atoms.end()) return l.negated;  // unconstrained atom, all-false row
    bool value = (mask >> (it - atoms.begin())) & 1u;
    return l.negated ? !value : value;
  }

  bool model_row(unsigned long mask) const {
    for (const Literal& f : p.facts)
      if (!holds(f, mask)) return false;
    for (const Rule& r : p.rules) {
      bool body = true;
      for (const Literal& b : r.body)
        if (!holds(b, mask)) body = false;
      if (body && !holds(r.head, mask)) return false;
    }
    return true;
  }

  bool consistent() const {
    for (unsigned long m = 0; m < (1ul << atoms.size()); ++m)
      if (model_row(m)) return true;
    return false;
  }

  bool entails(const Literal& l) const {
    for (unsigned long m = 0; m < (1ul << atoms.size()); ++m)
      if (model_row(m) && !holds(l, m)) return false;
    return true;
  }
};

bool criterion5() {
  std::mt19937_64 rng(515151);
  DefiniteModelGenOptions o;  // 8 atoms maximum, under the 10-atom cap
  int models = 0;
  while (models < 100) {
    Model m = random_definite_model(rng, o);
    if (has_errors(validate_model(m))) continue;
    ++models;

    // the degenerate model has exactly one candidate: everything
    Candidate c;
    for (const Element& e : m.elements) c.combo.push_back(e.id);
    std::sort(c.combo.begin(), c.combo.end());

    DefeasibleProgram prog = program_for(m, c);
    TruthTable tt(prog);
    bool oracle = tt.consistent();
    if (oracle)
      for (const Element& e : m.elements)
        if (e.kind == ElementKind::goal || e.kind == ElementKind::quality_constraint)
          if (!tt.entails(e.holds)) oracle = false;

    SolveOptions zj;
    zj.zj = true;
    bool zj_verdict = !solve(m, zj).solutions.empty();
    bool solve_verdict = !solve(m).solutions.empty();

    if (zj_verdict != oracle) return false;
    if (solve_verdict != oracle) return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6(std::string& detail) {
  auto rr = parse_model(slurp("flight_booking.rqm"));
  if (!rr.ok()) return false;
  const Model& m = rr.model;

  SolveResult sr = solve(m);
  if (sr.solutions.empty() || !sr.exhaustive) {
    detail = "no solutions";
    return false;
  }

  for (const Candidate& sol : sr.solutions) {
    DefeasibleEngine eng(program_for(m, sol));
    if (!eng.warranted(lit("paper_tickets_issued"))) {
      detail = "paper tickets not achieved";
      return false;
    }
    if (!verify_solution(m, sol).ok) {
      detail = "verification failed";
      return false;
    }
  }

  // independent dominance scan over the whole candidate space
  ResolvedPreferences prefs = resolve_preferences(m);
  bool exhausted = false;
  std::vector<Candidate> cands = enumerate_candidates(m, 1000000, &exhausted);
  if (!exhausted) return false;
  for (const Candidate& sol : sr.solutions)
    for (const Candidate& d : cands)
      if (!(d == sol) && check_candidate(m, d).feasible && dominates(m, prefs, d, sol)) {
        detail = "dominated by " + signature(m, d);
        return false;
      }
  return true;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  auto c4 = parse_model(slurp("gate_c4.rqm"));
  auto c5 = parse_model(slurp("gate_c5.rqm"));
  if (!c4.ok() || !c5.ok()) return false;

  SolveResult r4 = solve(c4.model);
  SolveResult r5 = solve(c5.model);
  return r4.solutions.empty() && has_code(r4.diagnostics, "C4_UNCOVERED_SOFTGOAL") &&
         r5.solutions.empty() && has_code(r5.diagnostics, "C5_UNPROJECTED_PREFERENCE");
}

// ---------------------------------------------------------------- criterion 8

bool criterion8() {
  std::mt19937_64 rng(818181);
  std::uniform_int_distribution<size_t> pick(0, 1u << 20);
  long triples = 0;
  while (triples < 1000) {
    Model m = random_model(rng);
    if (has_errors(validate_model(m))) continue;
    ResolvedPreferences prefs = resolve_preferences(m);
    bool exhausted = false;
    std::vector<Candidate> cands = enumerate_candidates(m, 64, &exhausted);
    if (cands.size() < 3) continue;
    for (int t = 0; t < 25 && triples < 1100; ++t, ++triples) {
      const Candidate& a = cands[pick(rng) % cands.size()];
      const Candidate& b = cands[pick(rng) % cands.size()];
      const Candidate& c = cands[pick(rng) % cands.size()];
      if (dominates(m, prefs, a, a)) return false;
      bool ab = dominates(m, prefs, a, b);
      bool ba = dominates(m, prefs, b, a);
      if (ab && ba) return false;
      if (ab && dominates(m, prefs, b, c) && !dominates(m, prefs, a, c)) return false;
    }
  }
  return triples >= 1000;
}

// ---------------------------------------------------------------- criterion 9

bool criterion9() {
  const char* fixtures[] = {"blocked.rqm",  "flight_booking.rqm", "flight_registry.rqm",
                            "gate_c4.rqm",  "gate_c5.rqm",        "unsat_core.rqm",
                            "zj_basic.rqm"};
  for (const char* f : fixtures) {
    auto first = parse_model(slurp(f));
    if (!first.ok()) return false;
    std::string text = render_model(first.model);
    auto second = parse_model(text);
    if (!second.ok()) return false;
    if (!structurally_equal(first.model, second.model)) return false;
    if (render_model(second.model) != text) return false;
  }

  std::mt19937_64 rng(919191);
  for (int i = 0; i < 100; ++i) {
    Model m = random_model(rng);
    std::string text = render_model(m);
    auto back = parse_model(text);
    if (!back.ok()) return false;
    if (!structurally_equal(m, back.model)) return false;
    if (render_model(back.model) != text) return false;
  }
  return true;
}

}  // namespace

int main() {
  {
    auto t0 = Clock::now();
    bool ok = criterion1();
    double dt = seconds_since(t0);
    report(1, "utterances ex1..ex15 classify to the expected elements and attitudes",
           ok && dt < 1.0, ok && dt >= 1.0 ? "too slow" : "");
  }
  bool consistency_ok = false;
  {
    auto t0 = Clock::now();
    bool ok = criterion2_and_4(consistency_ok);
    double dt = seconds_since(t0);
    report(2, "warrant engine matches the brute-force oracle on 100 random programs",
           ok && dt < 60.0, ok && dt >= 60.0 ? "too slow" : "");
  }
  report(3, "a warranted conclusion is retracted by stronger contrary knowledge",
         criterion3());
  report(4, "no literal and its complement are both warranted across those programs",
         consistency_ok);
  report(5, "classical mode, truth-table oracle and the solver agree on 100 "
            "degenerate models",
         criterion5());
  {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = criterion6(detail);
    double dt = seconds_since(t0);
    report(6, "the booking fixture solves to verified undominated specifications",
           ok && dt < 5.0, !ok ? detail : (dt >= 5.0 ? "too slow" : ""));
  }
  report(7, "uncovered softgoals and unprojected preferences fail with their codes",
         criterion7());
  report(8, "dominance is irreflexive, antisymmetric and transitive on 1000 triples",
         criterion8());
  report(9, "model text round-trips structurally on fixtures and 100 random models",
         criterion9());

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
