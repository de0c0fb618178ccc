#include <cctype>
#include <cstdlib>
#include <optional>

#include "coreq/dsl.hpp"

namespace coreq {
namespace {

enum class Tok {
  ident,
  number,
  string,
  lbrace,
  rbrace,
  lbracket,
  rbracket,
  colon,
  comma,
  tilde,
  amp,
  pipe,
  gt,
  strict_arrow,      // ->
  defeasible_arrow,  // =>
  approx_arrow,      // <-
  eof,
  bad
};

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(const std::string& src, std::string file)
      : src_(src), file_(std::move(file)) {}

  Token next() {
    skip_ws();
    Token t;
    t.span = here();
    if (pos_ >= src_.size()) {
      t.kind = Tok::eof;
      return t;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        t.text.push_back(advance());
      t.kind = Tok::ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      if (c == '-' || c == '+') t.text.push_back(advance());
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
              src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '-' || src_[pos_] == '+') && pos_ > 0 &&
               (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
        t.text.push_back(advance());
      t.kind = Tok::number;
      return t;
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char d = advance();
        if (d == '\\' && pos_ < src_.size()) {
          char e = advance();
          t.text.push_back(e == 'n' ? '\n' : e);
        } else {
          t.text.push_back(d);
        }
      }
      if (pos_ < src_.size()) advance();  // closing quote
      t.kind = Tok::string;
      return t;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('-', '>')) { advance(); advance(); t.kind = Tok::strict_arrow; return t; }
    if (two('=', '>')) { advance(); advance(); t.kind = Tok::defeasible_arrow; return t; }
    if (two('<', '-')) { advance(); advance(); t.kind = Tok::approx_arrow; return t; }
    advance();
    switch (c) {
      case '{': t.kind = Tok::lbrace; return t;
      case '}': t.kind = Tok::rbrace; return t;
      case '[': t.kind = Tok::lbracket; return t;
      case ']': t.kind = Tok::rbracket; return t;
      case ':': t.kind = Tok::colon; return t;
      case ',': t.kind = Tok::comma; return t;
      case '~': t.kind = Tok::tilde; return t;
      case '&': t.kind = Tok::amp; return t;
      case '|': t.kind = Tok::pipe; return t;
      case '>': t.kind = Tok::gt; return t;
    }
    t.kind = Tok::bad;
    t.text = std::string(1, c);
    return t;
  }

  // Raw scan used for unquoted domain descriptions: everything up to the
  // next ',' or '}' on this nesting level, right-trimmed. Interior spacing
  // is kept as written (the caller stitches this onto an already-lexed
  // token, so an initial skip would eat separators inside the value).
  std::string raw_until_field_end() {
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != ',' && src_[pos_] != '}' &&
           src_[pos_] != '\n')
      out.push_back(advance());
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
      out.pop_back();
    return out;
  }

  SourceSpan here() const { return {file_, line_, col_}; }

 private:
  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Recursive-descent parser over the token stream. On an error the parser
// reports a diagnostic and skips ahead to the next top-level keyword.
class Parser {
 public:
  Parser(const std::string& text, std::string file)
      : lex_(text, std::move(file)) {
    bump();
  }

  Token cur_;
  Lexer lex_;
  Diagnostics diags_;

  void bump() { cur_ = lex_.next(); }

  bool at_ident(const char* kw) const {
    return cur_.kind == Tok::ident && cur_.text == kw;
  }

  void error(std::string msg) {
    diags_.push_back({Severity::error, codes::syntax, std::move(msg), "", cur_.span});
  }

  void sync_to_decl() {
    static const char* kws[] = {"quality", "assumption", "goal", "qc", "softgoal",
                                "plan", "rule", "priority", "approx", "prefer",
                                "evaluate", "alternatives", "utterance", "compound"};
    while (cur_.kind != Tok::eof) {
      if (cur_.kind == Tok::ident)
        for (const char* k : kws)
          if (cur_.text == k) return;
      bump();
    }
  }

  bool expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      error(std::string("expected ") + what);
      return false;
    }
    bump();
    return true;
  }

  std::optional<std::string> expect_ident(const char* what) {
    if (cur_.kind != Tok::ident) {
      error(std::string("expected ") + what);
      return std::nullopt;
    }
    std::string s = cur_.text;
    bump();
    return s;
  }

  std::optional<Literal> parse_literal() {
    bool neg = false;
    if (cur_.kind == Tok::tilde) {
      neg = true;
      bump();
    }
    auto id = expect_ident("literal atom");
    if (!id) return std::nullopt;
    if (!is_valid_atom(*id)) {
      diags_.push_back({Severity::error, codes::bad_atom,
                        "literal atom must start lowercase: '" + *id + "'", "",
                        cur_.span});
    }
    return Literal{*id, neg};
  }

  std::optional<Optionality> parse_opt_marker() {
    if (at_ident("compulsory")) {
      bump();
      return Optionality::compulsory;
    }
    if (at_ident("optional")) {
      bump();
      return Optionality::optional;
    }
    return std::nullopt;
  }

  std::vector<std::string> parse_id_list_brackets() {
    std::vector<std::string> out;
    if (!expect(Tok::lbracket, "'['")) return out;
    while (cur_.kind == Tok::ident) {
      out.push_back(cur_.text);
      bump();
      if (cur_.kind == Tok::comma) bump();
    }
    expect(Tok::rbracket, "']'");
    return out;
  }
};

ElementKind element_keyword_kind(const std::string& kw) {
  if (kw == "assumption") return ElementKind::domain_assumption;
  if (kw == "goal") return ElementKind::goal;
  if (kw == "qc") return ElementKind::quality_constraint;
  if (kw == "softgoal") return ElementKind::softgoal;
  return ElementKind::plan;
}

void parse_quality(Parser& p, Model& m) {
  QualityType q;
  q.span = p.cur_.span;
  p.bump();  // 'quality'
  auto id = p.expect_ident("quality id");
  if (!id) return p.sync_to_decl();
  q.id = *id;
  if (!p.expect(Tok::lbrace, "'{'")) return p.sync_to_decl();
  while (p.cur_.kind == Tok::ident) {
    std::string key = p.cur_.text;
    p.bump();
    if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
    if (key == "level") {
      auto v = p.expect_ident("measurement level");
      if (!v) return p.sync_to_decl();
      if (*v == "nominal") q.level = MeasurementLevel::nominal;
      else if (*v == "ordinal") q.level = MeasurementLevel::ordinal;
      else if (*v == "interval") q.level = MeasurementLevel::interval;
      else if (*v == "ratio") q.level = MeasurementLevel::ratio;
      else p.error("unknown measurement level '" + *v + "'");
    } else if (key == "structure") {
      auto v = p.expect_ident("quality structure");
      if (!v) return p.sync_to_decl();
      if (*v == "well_defined_shared") q.structure = QualityStructure::well_defined_shared;
      else if (*v == "subjective_ill_defined")
        q.structure = QualityStructure::subjective_ill_defined;
      else p.error("unknown quality structure '" + *v + "'");
    } else if (key == "domain") {
      if (p.cur_.kind == Tok::string) {
        q.domain = p.cur_.text;
        p.bump();
      } else {
        // unquoted range descriptions like 1..50 are taken verbatim
        q.domain = p.cur_.text + p.lex_.raw_until_field_end();
        p.bump();
      }
    } else {
      p.error("unknown quality field '" + key + "'");
      return p.sync_to_decl();
    }
    if (p.cur_.kind == Tok::comma) p.bump();
  }
  p.expect(Tok::rbrace, "'}'");
  m.qualities.push_back(std::move(q));
}

void parse_element(Parser& p, Model& m) {
  Element e;
  e.span = p.cur_.span;
  e.kind = element_keyword_kind(p.cur_.text);
  p.bump();
  auto id = p.expect_ident("element id");
  if (!id) return p.sync_to_decl();
  e.id = *id;
  e.declared_optionality = p.parse_opt_marker();
  if (!p.expect(Tok::lbrace, "'{'")) return p.sync_to_decl();
  while (p.cur_.kind == Tok::ident) {
    std::string key = p.cur_.text;
    p.bump();
    if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
    if (key == "holds") {
      auto lit = p.parse_literal();
      if (!lit) return p.sync_to_decl();
      e.holds = *lit;
    } else if (key == "quality") {
      auto v = p.expect_ident("quality id");
      if (!v) return p.sync_to_decl();
      e.quality = *v;
    } else if (key == "constraint") {
      if (p.cur_.kind != Tok::string) {
        p.error("constraint expects a quoted expression");
        return p.sync_to_decl();
      }
      e.constraint_expr = p.cur_.text;
      p.bump();
    } else if (key == "params") {
      e.params = p.parse_id_list_brackets();
    } else if (key == "source") {
      auto v = p.expect_ident("utterance id");
      if (!v) return p.sync_to_decl();
      e.source_utterance = *v;
    } else {
      p.error("unknown element field '" + key + "'");
      return p.sync_to_decl();
    }
    if (p.cur_.kind == Tok::comma) p.bump();
  }
  p.expect(Tok::rbrace, "'}'");
  if (e.holds.atom.empty())
    p.diags_.push_back({Severity::error, codes::syntax,
                        "element requires a holds literal", e.id, e.span});
  m.elements.push_back(std::move(e));
}

void parse_rule(Parser& p, Model& m) {
  Rule r;
  r.span = p.cur_.span;
  p.bump();  // 'rule'
  auto id = p.expect_ident("rule id");
  if (!id) return p.sync_to_decl();
  r.id = *id;
  if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
  while (true) {
    auto lit = p.parse_literal();
    if (!lit) return p.sync_to_decl();
    r.body.push_back(*lit);
    if (p.cur_.kind == Tok::amp) {
      p.bump();
      continue;
    }
    break;
  }
  if (p.cur_.kind == Tok::strict_arrow) {
    r.strength = RuleStrength::strict;
  } else if (p.cur_.kind == Tok::defeasible_arrow) {
    r.strength = RuleStrength::defeasible;
  } else {
    p.error("expected '->' or '=>'");
    return p.sync_to_decl();
  }
  p.bump();
  auto head = p.parse_literal();
  if (!head) return p.sync_to_decl();
  r.head = *head;
  m.rules.push_back(std::move(r));
}

void parse_priority(Parser& p, Model& m) {
  p.bump();  // 'priority'
  auto hi = p.expect_ident("rule id");
  if (!hi) return p.sync_to_decl();
  if (!p.expect(Tok::gt, "'>'")) return p.sync_to_decl();
  auto lo = p.expect_ident("rule id");
  if (!lo) return p.sync_to_decl();
  m.priorities.emplace_back(*hi, *lo);
}

void parse_approx(Parser& p, Model& m) {
  JustifiedApproximation ap;
  ap.span = p.cur_.span;
  p.bump();  // 'approx'
  auto sg = p.expect_ident("softgoal id");
  if (!sg) return p.sync_to_decl();
  ap.softgoal = *sg;
  if (!p.expect(Tok::approx_arrow, "'<-'")) return p.sync_to_decl();
  auto qc = p.expect_ident("quality-constraint id");
  if (!qc) return p.sync_to_decl();
  ap.qc = *qc;
  if (!p.expect(Tok::lbrace, "'{'")) return p.sync_to_decl();
  while (p.cur_.kind == Tok::ident) {
    std::string key = p.cur_.text;
    p.bump();
    if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
    if (key == "correlation") {
      if (p.cur_.kind != Tok::number) {
        p.error("correlation expects a number");
        return p.sync_to_decl();
      }
      ap.correlation = std::strtod(p.cur_.text.c_str(), nullptr);
      p.bump();
    } else if (key == "justification") {
      if (p.cur_.kind != Tok::string) {
        p.error("justification expects a quoted text record");
        return p.sync_to_decl();
      }
      ap.justification = p.cur_.text;
      p.bump();
    } else {
      p.error("unknown approx field '" + key + "'");
      return p.sync_to_decl();
    }
    if (p.cur_.kind == Tok::comma) p.bump();
  }
  p.expect(Tok::rbrace, "'}'");
  m.approximations.push_back(std::move(ap));
}

void parse_prefer(Parser& p, Model& m) {
  Attitude a;
  a.span = p.cur_.span;
  p.bump();  // 'prefer'
  auto id = p.expect_ident("attitude id");
  if (!id) return p.sync_to_decl();
  a.id = *id;
  a.optionality = p.parse_opt_marker().value_or(Optionality::compulsory);
  if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
  if (p.at_ident("pref")) {
    p.bump();
    a.form = AttitudeForm::meta_preference;
  } else {
    a.form = AttitudeForm::preference;
  }
  auto lhs = p.expect_ident("preferred id");
  if (!lhs) return p.sync_to_decl();
  if (!p.expect(Tok::gt, "'>'")) return p.sync_to_decl();
  auto rhs = p.expect_ident("dispreferred id");
  if (!rhs) return p.sync_to_decl();
  a.preferred = *lhs;
  a.dispreferred = *rhs;
  m.attitudes.push_back(std::move(a));
}

void parse_evaluate(Parser& p, Model& m) {
  Attitude a;
  a.span = p.cur_.span;
  a.form = AttitudeForm::evaluation;
  p.bump();  // 'evaluate'
  auto id = p.expect_ident("attitude id");
  if (!id) return p.sync_to_decl();
  a.id = *id;
  a.optionality = p.parse_opt_marker().value_or(Optionality::compulsory);
  if (!p.expect(Tok::colon, "':'")) return p.sync_to_decl();
  if (p.at_ident("favor")) {
    a.sign = EvaluationSign::favor;
  } else if (p.at_ident("disfavor")) {
    a.sign = EvaluationSign::disfavor;
  } else {
    p.error("expected 'favor' or 'disfavor'");
    return p.sync_to_decl();
  }
  p.bump();
  auto target = p.expect_ident("element id");
  if (!target) return p.sync_to_decl();
  a.target = *target;
  m.attitudes.push_back(std::move(a));
}

void parse_alternatives(Parser& p, Model& m) {
  p.bump();  // 'alternatives'
  if (!p.expect(Tok::lbrace, "'{'")) return p.sync_to_decl();
  std::vector<std::string> group;
  while (p.cur_.kind == Tok::ident) {
    group.push_back(p.cur_.text);
    p.bump();
    if (p.cur_.kind == Tok::pipe) p.bump();
  }
  p.expect(Tok::rbrace, "'}'");
  m.alternatives.push_back(std::move(group));
}

}  // namespace

ParseModelResult parse_model(const std::string& text, const std::string& file,
                             const ValidateOptions& opts) {
  ParseModelResult out;
  Parser p(text, file);
  while (p.cur_.kind != Tok::eof) {
    if (p.at_ident("quality")) parse_quality(p, out.model);
    else if (p.at_ident("assumption") || p.at_ident("goal") || p.at_ident("qc") ||
             p.at_ident("softgoal") || p.at_ident("plan"))
      parse_element(p, out.model);
    else if (p.at_ident("rule")) parse_rule(p, out.model);
    else if (p.at_ident("priority")) parse_priority(p, out.model);
    else if (p.at_ident("approx")) parse_approx(p, out.model);
    else if (p.at_ident("prefer")) parse_prefer(p, out.model);
    else if (p.at_ident("evaluate")) parse_evaluate(p, out.model);
    else if (p.at_ident("alternatives")) parse_alternatives(p, out.model);
    else {
      p.error("expected a declaration");
      p.bump();
      p.sync_to_decl();
    }
  }
  out.diagnostics = std::move(p.diags_);
  resolve_optionality(out.model);
  if (!has_errors(out.diagnostics)) {
    Diagnostics vd = validate_model(out.model, opts);
    out.diagnostics.insert(out.diagnostics.end(), vd.begin(), vd.end());
  }
  return out;
}

ParseUtterancesResult parse_utterances(const std::string& text, const std::string& file) {
  ParseUtterancesResult out;
  Parser p(text, file);
  while (p.cur_.kind != Tok::eof) {
    if (p.at_ident("utterance")) {
      Utterance u;
      u.span = p.cur_.span;
      p.bump();
      auto id = p.expect_ident("utterance id");
      if (!id) { p.sync_to_decl(); continue; }
      u.id = *id;
      if (!p.at_ident("force")) {
        p.error("expected 'force'");
        p.sync_to_decl();
        continue;
      }
      p.bump();
      auto fname = p.expect_ident("force keyword");
      if (!fname) { p.sync_to_decl(); continue; }
      auto force = force_from_string(*fname);
      if (!force) {
        p.diags_.push_back({Severity::error, codes::unknown_force,
                            "unknown force '" + *fname + "'", u.id, u.span});
        p.sync_to_decl();
        continue;
      }
      u.force = force;
      if (!p.expect(Tok::lbrace, "'{'")) { p.sync_to_decl(); continue; }
      PropositionalContent prop;
      bool saw_prop = false;
      std::optional<ContentPayload> payload;
      bool bad = false;
      while (p.cur_.kind == Tok::ident && !bad) {
        std::string key = p.cur_.text;
        p.bump();
        if (!p.expect(Tok::colon, "':'")) { bad = true; break; }
        if (key == "text") {
          if (p.cur_.kind != Tok::string) { p.error("text expects a quoted string"); bad = true; break; }
          u.text = p.cur_.text;
          p.bump();
        } else if (key == "holds") {
          auto lit = p.parse_literal();
          if (!lit) { bad = true; break; }
          prop.holds = *lit;
          saw_prop = true;
        } else if (key == "quality") {
          auto v = p.expect_ident("quality id");
          if (!v) { bad = true; break; }
          prop.quality = *v;
          saw_prop = true;
        } else if (key == "constraint") {
          if (p.cur_.kind != Tok::string) { p.error("constraint expects a quoted expression"); bad = true; break; }
          prop.constraint_expr = p.cur_.text;
          p.bump();
          saw_prop = true;
        } else if (key == "params") {
          prop.params = p.parse_id_list_brackets();
          saw_prop = true;
        } else if (key == "evaluate") {
          EvaluationContent ev;
          if (p.at_ident("favor")) ev.sign = EvaluationSign::favor;
          else if (p.at_ident("disfavor")) ev.sign = EvaluationSign::disfavor;
          else { p.error("expected 'favor' or 'disfavor'"); bad = true; break; }
          p.bump();
          auto target = p.expect_ident("element id");
          if (!target) { bad = true; break; }
          ev.target = *target;
          payload = ev;
        } else if (key == "prefer") {
          PreferenceContent pr;
          if (p.at_ident("pref")) {
            pr.over_preferences = true;
            p.bump();
          }
          auto lhs = p.expect_ident("preferred id");
          if (!lhs) { bad = true; break; }
          if (!p.expect(Tok::gt, "'>'")) { bad = true; break; }
          auto rhs = p.expect_ident("dispreferred id");
          if (!rhs) { bad = true; break; }
          pr.preferred = *lhs;
          pr.dispreferred = *rhs;
          payload = pr;
        } else {
          p.error("unknown utterance field '" + key + "'");
          bad = true;
          break;
        }
        if (p.cur_.kind == Tok::comma) p.bump();
      }
      if (bad) { p.sync_to_decl(); continue; }
      p.expect(Tok::rbrace, "'}'");
      if (saw_prop && !payload) {
        if (prop.holds.atom.empty()) {
          p.diags_.push_back({Severity::error, codes::missing_content,
                              "utterance content requires a holds literal", u.id, u.span});
        }
        payload = prop;
      }
      if (!payload) {
        p.diags_.push_back({Severity::error, codes::missing_content,
                            "utterance lacks a content payload", u.id, u.span});
      }
      u.content = payload;
      out.set.utterances.push_back(std::move(u));
    } else if (p.at_ident("compound")) {
      Utterance u;
      u.span = p.cur_.span;
      p.bump();
      auto id = p.expect_ident("utterance id");
      if (!id) { p.sync_to_decl(); continue; }
      u.id = *id;
      if (p.at_ident("and")) u.connective = Connective::conjunction;
      else if (p.at_ident("or")) u.connective = Connective::disjunction;
      else if (p.at_ident("if_then")) u.connective = Connective::if_then;
      else {
        p.error("expected 'and', 'or' or 'if_then'");
        p.sync_to_decl();
        continue;
      }
      p.bump();
      u.children = p.parse_id_list_brackets();
      if (u.children.size() < 2 ||
          (u.connective == Connective::if_then && u.children.size() != 2)) {
        p.diags_.push_back({Severity::error, codes::malformed_utterance,
                            u.connective == Connective::if_then
                                ? "if_then requires exactly two children"
                                : "compound requires at least two children",
                            u.id, u.span});
      }
      out.set.utterances.push_back(std::move(u));
    } else {
      p.error("expected 'utterance' or 'compound'");
      p.bump();
      p.sync_to_decl();
    }
  }
  out.diagnostics = std::move(p.diags_);
  return out;
}

}  // namespace coreq
