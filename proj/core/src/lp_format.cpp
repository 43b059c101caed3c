// Copyright 2026 The stmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stmatch/lp_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "stmatch/error.hpp"
#include "stmatch/instance.hpp"

namespace stmatch {
namespace {

void append_term(std::string& out, bool first, double coef, const std::string& name) {
  if (first) {
    if (coef < 0) out += "- ";
  } else {
    out += coef < 0 ? " - " : " + ";
  }
  double mag = std::abs(coef);
  if (mag != 1.0) {
    out += format_double(mag);
    out += ' ';
  }
  out += name;
}

const char* rel_text(Rel rel) {
  switch (rel) {
    case Rel::kLe:
      return "<=";
    case Rel::kGe:
      return ">=";
    case Rel::kEq:
      return "=";
  }
  return "=";
}

struct LpParser {
  std::vector<std::string> lines;
  size_t pos = 0;

  explicit LpParser(const std::string& text) {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos == 0 ? 1 : static_cast<int>(pos));
  }

  bool next(std::string& out) {
    while (pos < lines.size()) {
      const std::string& line = lines[pos++];
      size_t b = line.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      size_t e = line.find_last_not_of(" \t");
      out = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  }

  void expect(const std::string& keyword) {
    std::string line;
    if (!next(line) || line != keyword) fail("expected '" + keyword + "'");
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_number(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e;
}

// Reads "[name:] term (+|-) term ... [rel rhs]" from whitespace tokens.
// Terms are "[coef] var"; a leading sign token applies to the next term.
void parse_expr(LpParser& p, const std::vector<std::string>& toks, size_t begin, size_t end,
                IlpModel& model, std::vector<std::pair<int, double>>& terms) {
  double sign = 1.0;
  bool have_coef = false;
  double coef = 1.0;
  for (size_t k = begin; k < end; ++k) {
    const std::string& tok = toks[k];
    if (tok == "+" || tok == "-") {
      if (have_coef) p.fail("dangling coefficient before '" + tok + "'");
      sign = tok == "-" ? -1.0 : 1.0;
      continue;
    }
    double value = 0.0;
    if (parse_number(tok, value)) {
      if (have_coef) p.fail("two consecutive numbers in expression");
      coef = value;
      have_coef = true;
      continue;
    }
    int id = model.var_id(tok);
    if (id < 0) id = model.add_var(tok, VarKind::kBinary);
    terms.emplace_back(id, sign * (have_coef ? coef : 1.0));
    sign = 1.0;
    have_coef = false;
    coef = 1.0;
  }
  if (have_coef) p.fail("expression ends with a dangling coefficient");
}

}  // namespace

std::string to_lp_string(const IlpModel& model) {
  std::string out = "Maximize\n obj:";
  bool first = true;
  std::string expr;
  for (const Variable& var : model.vars) {
    if (var.obj == 0.0) continue;
    append_term(expr, first, var.obj, var.name);
    first = false;
  }
  if (!expr.empty()) {
    out += ' ';
    out += expr;
  }
  out += "\nSubject To\n";
  for (const Constraint& con : model.cons) {
    out += ' ';
    out += con.name;
    out += ':';
    std::string body;
    bool lead = true;
    for (const auto& [id, coef] : con.terms) {
      append_term(body, lead, coef, model.vars[static_cast<size_t>(id)].name);
      lead = false;
    }
    if (!body.empty()) {
      out += ' ';
      out += body;
    }
    out += ' ';
    out += rel_text(con.rel);
    out += ' ';
    out += format_double(con.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  std::string binaries;
  std::string generals;
  for (const Variable& var : model.vars) {
    std::string& section = var.kind == VarKind::kBinary ? binaries : generals;
    section += ' ';
    section += var.name;
    section += '\n';
  }
  if (!binaries.empty()) {
    out += "Binaries\n";
    out += binaries;
  }
  if (!generals.empty()) {
    out += "Generals\n";
    out += generals;
  }
  out += "End\n";
  return out;
}

void export_lp(const IlpModel& model, const std::string& path) {
  write_text_file(path, to_lp_string(model));
}

IlpModel parse_lp(const std::string& text) {
  LpParser p(text);
  IlpModel model;
  p.expect("Maximize");
  std::string line;
  if (!p.next(line) || line.rfind("obj:", 0) != 0) p.fail("expected objective line 'obj: ...'");
  {
    std::vector<std::string> toks = split_ws(line.substr(4));
    std::vector<std::pair<int, double>> terms;
    parse_expr(p, toks, 0, toks.size(), model, terms);
    for (const auto& [id, coef] : terms) model.set_objective_term(id, coef);
  }
  if (!p.next(line) || line != "Subject To") p.fail("expected 'Subject To'");
  while (true) {
    if (!p.next(line)) p.fail("unterminated constraint section");
    if (line == "Bounds") break;
    size_t colon = line.find(':');
    if (colon == std::string::npos || colon == 0) p.fail("constraint line needs 'name:'");
    std::string name = line.substr(0, colon);
    std::vector<std::string> toks = split_ws(line.substr(colon + 1));
    size_t rel_at = toks.size();
    Rel rel = Rel::kEq;
    for (size_t k = 0; k < toks.size(); ++k) {
      if (toks[k] == "<=" || toks[k] == ">=" || toks[k] == "=") {
        rel_at = k;
        rel = toks[k] == "<=" ? Rel::kLe : toks[k] == ">=" ? Rel::kGe : Rel::kEq;
        break;
      }
    }
    if (rel_at + 2 != toks.size()) p.fail("constraint needs '<rel> <rhs>' at end of line");
    double rhs = 0.0;
    if (!parse_number(toks.back(), rhs)) p.fail("bad right-hand side '" + toks.back() + "'");
    std::vector<std::pair<int, double>> terms;
    parse_expr(p, toks, 0, rel_at, model, terms);
    model.add_con(std::move(name), std::move(terms), rel, rhs);
  }
  // Bounds is written empty; variable kinds come from the next sections.
  std::vector<char> kinded(model.vars.size(), 0);
  if (!p.next(line)) p.fail("file ends inside Bounds");
  while (line != "End") {
    VarKind kind;
    if (line == "Binaries") {
      kind = VarKind::kBinary;
    } else if (line == "Generals") {
      kind = VarKind::kInteger;
    } else {
      p.fail("expected 'Binaries', 'Generals' or 'End'");
    }
    while (p.next(line)) {
      if (line == "End" || line == "Binaries" || line == "Generals") break;
      if (split_ws(line).size() != 1) p.fail("variable sections list one name per line");
      int id = model.var_id(line);
      if (id < 0) p.fail("'" + line + "' declared but never used");
      if (kinded[static_cast<size_t>(id)]) p.fail("'" + line + "' declared twice");
      kinded[static_cast<size_t>(id)] = 1;
      model.vars[static_cast<size_t>(id)].kind = kind;
    }
    if (line != "End" && line != "Binaries" && line != "Generals") {
      p.fail("file ends without 'End'");
    }
  }
  for (size_t v = 0; v < model.vars.size(); ++v) {
    if (!kinded[v]) p.fail("variable '" + model.vars[v].name + "' has no declared kind");
  }
  return model;
}

std::string to_warm_string(const IlpModel& model) {
  std::string out;
  for (const Variable& var : model.vars) {
    if (!var.warm.has_value()) continue;
    out += var.name;
    out += ' ';
    out += format_double(*var.warm);
    out += '\n';
  }
  return out;
}

std::map<std::string, double> parse_solution(const std::string& text) {
  std::map<std::string, double> values;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? nl : nl - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 2) {
      throw ParseError("solution lines are '<variable> <value>'", static_cast<int>(line_no));
    }
    double value = 0.0;
    if (!parse_number(toks[1], value)) {
      throw ParseError("bad value '" + toks[1] + "'", static_cast<int>(line_no));
    }
    values[toks[0]] = value;
  }
  return values;
}

}  // namespace stmatch
