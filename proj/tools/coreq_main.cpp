#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "coreq/dsl.hpp"
#include "coreq/report.hpp"
#include "coreq/speech_acts.hpp"

namespace {

constexpr int kOk = 0;       // success
constexpr int kDomain = 1;   // validation or solving failure
constexpr int kIo = 2;       // unreadable input, unwritable output, bad usage
constexpr int kBudget = 3;   // candidate budget exhausted

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

void print_diags(const coreq::Diagnostics& ds) {
  for (const auto& d : ds) std::cerr << coreq::format(d) << "\n";
}

// 0 on success (or no report requested), kIo when the report cannot land
int emit_report(const std::string& path, const coreq::Json& j) {
  if (path.empty()) return kOk;
  if (!write_file(path, coreq::write_text(j))) {
    std::cerr << "error[IO_ERROR]: cannot write '" << path << "'\n";
    return kIo;
  }
  return kOk;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

int cmd_check(const std::string& path, double threshold, const std::string& report) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error[IO_ERROR]: cannot read '" << path << "'\n";
    return kIo;
  }
  auto res = coreq::parse_model(text, path, {threshold});
  print_diags(res.diagnostics);
  coreq::Json j = coreq::report_shell("check");
  j["valid"] = !coreq::has_errors(res.diagnostics);
  j["diagnostics"] = coreq::to_json(res.diagnostics);
  if (int rc = emit_report(report, j)) return rc;
  return coreq::has_errors(res.diagnostics) ? kDomain : kOk;
}

int cmd_classify(const std::string& upath, const std::string& rpath,
                 const std::string& out, const std::string& report) {
  std::string utext, rtext;
  if (!read_file(upath, utext)) {
    std::cerr << "error[IO_ERROR]: cannot read '" << upath << "'\n";
    return kIo;
  }
  if (!read_file(rpath, rtext)) {
    std::cerr << "error[IO_ERROR]: cannot read '" << rpath << "'\n";
    return kIo;
  }
  auto ur = coreq::parse_utterances(utext, upath);
  auto rr = coreq::parse_model(rtext, rpath);

  coreq::Diagnostics all = ur.diagnostics;
  all.insert(all.end(), rr.diagnostics.begin(), rr.diagnostics.end());

  coreq::Model combined = rr.model;
  size_t new_elements = 0, new_attitudes = 0;
  if (!coreq::has_errors(all)) {
    auto cls = coreq::classify_utterances(ur.set, rr.model);
    all.insert(all.end(), cls.diagnostics.begin(), cls.diagnostics.end());
    new_elements = cls.elements.size();
    new_attitudes = cls.attitudes.size();
    for (auto& e : cls.elements) combined.elements.push_back(std::move(e));
    for (auto& a : cls.attitudes) combined.attitudes.push_back(std::move(a));
    coreq::resolve_optionality(combined);
    auto vd = coreq::validate_model(combined);
    all.insert(all.end(), vd.begin(), vd.end());
  }
  print_diags(all);

  std::string rendered = coreq::render_model(combined);
  if (!coreq::has_errors(all)) {
    if (out.empty()) {
      std::cout << rendered;
    } else if (!write_file(out, rendered)) {
      std::cerr << "error[IO_ERROR]: cannot write '" << out << "'\n";
      return kIo;
    }
  }

  coreq::Json j = coreq::report_shell("classify");
  j["elements_classified"] = new_elements;
  j["attitudes_classified"] = new_attitudes;
  j["diagnostics"] = coreq::to_json(all);
  if (int rc = emit_report(report, j)) return rc;
  return coreq::has_errors(all) ? kDomain : kOk;
}

int cmd_solve(const std::string& path, double threshold, long max_candidates,
              bool zj, bool all_solutions, bool serial, const std::string& report) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error[IO_ERROR]: cannot read '" << path << "'\n";
    return kIo;
  }
  auto res = coreq::parse_model(text, path, {threshold});
  print_diags(res.diagnostics);
  if (coreq::has_errors(res.diagnostics)) {
    coreq::Json j = coreq::report_shell("solve");
    j["diagnostics"] = coreq::to_json(res.diagnostics);
    if (int rc = emit_report(report, j)) return rc;
    return kDomain;
  }

  coreq::SolveOptions opts;
  opts.max_candidates = max_candidates;
  opts.zj = zj;
  opts.approx_threshold = threshold;
  opts.parallel = !serial;
  auto sr = coreq::solve(res.model, opts);
  print_diags(sr.diagnostics);

  size_t shown = all_solutions ? sr.solutions.size() : std::min<size_t>(1, sr.solutions.size());
  for (size_t i = 0; i < shown; ++i)
    std::cout << "solution " << coreq::signature(res.model, sr.solutions[i]) << "\n";

  coreq::Json j = coreq::report_shell("solve");
  coreq::Diagnostics merged = res.diagnostics;
  merged.insert(merged.end(), sr.diagnostics.begin(), sr.diagnostics.end());
  j["diagnostics"] = coreq::to_json(merged);
  coreq::Json body = coreq::solve_json(res.model, sr);
  for (auto& [k, v] : body.items()) j[k] = v;
  if (int rc = emit_report(report, j)) return rc;

  if (!sr.exhaustive) return kBudget;
  return sr.solutions.empty() ? kDomain : kOk;
}

void print_node(const coreq::DialecticalNode& n, int depth) {
  std::cout << std::string(static_cast<size_t>(depth) * 2, ' ')
            << (depth == 0 ? "argument " : "defeater ")
            << coreq::to_string(n.argument.conclusion) << " ["
            << join(n.argument.support, ", ") << "] "
            << (n.undefeated ? "undefeated" : "defeated") << "\n";
  for (const auto& c : n.children) print_node(c, depth + 1);
}

int cmd_explain(const std::string& path, const std::string& query,
                const std::string& candidate_csv, const std::string& report) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error[IO_ERROR]: cannot read '" << path << "'\n";
    return kIo;
  }
  auto res = coreq::parse_model(text, path);
  print_diags(res.diagnostics);
  if (coreq::has_errors(res.diagnostics)) return kDomain;
  const coreq::Model& m = res.model;

  coreq::Candidate cand;
  if (candidate_csv.empty()) {
    auto combos = coreq::enumerate_compulsory_combinations(m);
    if (combos.empty()) {
      std::cerr << "error[S_UNSAT_COMPULSORY_CORE]: every choice of the "
                   "compulsory core is inconsistent\n";
      return kDomain;
    }
    cand = combos.front();
  } else {
    std::stringstream ss(candidate_csv);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) cand.combo.push_back(id);
    std::sort(cand.combo.begin(), cand.combo.end());
    for (const std::string& cid : cand.combo)
      if (!m.find_element(cid)) {
        std::cerr << "error[V_DANGLING_REF]: unknown element '" << cid << "'\n";
        return kDomain;
      }
  }

  coreq::Literal lit;
  std::string atom = query;
  if (!atom.empty() && atom[0] == '~') {
    lit.negated = true;
    atom = atom.substr(1);
  }
  lit.atom = atom;
  auto prog = coreq::program_for(m, cand);
  bool known = false;
  for (const std::string& a : prog.atoms()) known |= a == lit.atom;
  for (const auto& e : m.elements) known |= e.holds.atom == lit.atom;
  if (!coreq::is_valid_atom(lit.atom) || !known) {
    std::cerr << "error[E_UNKNOWN_LITERAL]: '" << query
              << "' names no atom of this model\n";
    return kDomain;
  }

  coreq::DefeasibleEngine engine(prog);
  auto ex = engine.explain(lit);
  std::cout << "query " << coreq::to_string(lit) << ": "
            << (ex.warranted ? "warranted" : "not warranted") << "\n";
  for (const auto& t : ex.trees) print_node(t, 0);

  coreq::Json j = coreq::report_shell("explain");
  j["candidate"] = coreq::candidate_json(m, cand);
  j["diagnostics"] = coreq::to_json(res.diagnostics);
  j["explanation"] = coreq::explanation_json(ex);
  if (int rc = emit_report(report, j)) return rc;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"requirements modeling workbench"};
  app.set_version_flag("--version", coreq::kVersion);
  app.require_subcommand(1);

  std::string model_path, utter_path, registry_path, out_path, report_path;
  std::string query, candidate_csv;
  double threshold = 0.5;
  long max_candidates = 200000;
  bool zj = false, all_solutions = false, serial = false;

  auto* check = app.add_subcommand("check", "Parse and validate a model file");
  check->add_option("model", model_path, "model file")->required();
  check->add_option("--approx-threshold", threshold, "minimum |correlation|");
  check->add_option("--report", report_path, "write a JSON report");

  auto* classify =
      app.add_subcommand("classify", "Derive model elements from annotated utterances");
  classify->add_option("utterances", utter_path, "utterance file")->required();
  classify->add_option("--registry", registry_path, "base model with quality types")
      ->required();
  classify->add_option("--out", out_path, "write the combined model here");
  classify->add_option("--report", report_path, "write a JSON report");

  auto* solve = app.add_subcommand("solve", "Compute the non-dominated specifications");
  solve->add_option("model", model_path, "model file")->required();
  solve->add_flag("--all-solutions", all_solutions, "print every non-dominated solution");
  solve->add_option("--max-candidates", max_candidates, "enumeration budget");
  solve->add_flag("--zj", zj, "classical entailment instead of warrant");
  solve->add_option("--approx-threshold", threshold, "minimum |correlation|");
  solve->add_flag("--serial", serial, "disable parallel feasibility checks");
  solve->add_option("--report", report_path, "write a JSON report");

  auto* explain = app.add_subcommand("explain", "Dialectical trees for a literal");
  explain->add_option("model", model_path, "model file")->required();
  explain->add_option("--query", query, "literal, ~atom for the complement")->required();
  explain->add_option("--candidate", candidate_csv,
                      "comma-separated element ids; first consistent core when absent");
  explain->add_option("--report", report_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kIo;
  }

  if (check->parsed()) return cmd_check(model_path, threshold, report_path);
  if (classify->parsed())
    return cmd_classify(utter_path, registry_path, out_path, report_path);
  if (solve->parsed())
    return cmd_solve(model_path, threshold, max_candidates, zj, all_solutions, serial,
                     report_path);
  if (explain->parsed()) return cmd_explain(model_path, query, candidate_csv, report_path);
  return kIo;
}
