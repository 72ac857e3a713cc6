// SPDX-License-Identifier: Apache-2.0
//
// Text format for rule sets; the grammar is described in docs/constraints.md.

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "lazyk/constraints.hpp"
#include "lazyk/errors.hpp"

namespace lazyk {

namespace {

struct ExprParser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg + " at column " + std::to_string(pos + 1));
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !ident_start(src[pos])) fail("expected name");
    std::size_t start = pos;
    while (pos < src.size() && ident_char(src[pos])) ++pos;
    return std::string(src.substr(start, pos - start));
  }

  Expr parse_expr() {
    Expr left = parse_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        left = binary(Expr::Kind::Add, std::move(left), parse_term());
      } else if (eat('-')) {
        left = binary(Expr::Kind::Sub, std::move(left), parse_term());
      } else {
        return left;
      }
    }
  }

  Expr parse_term() {
    Expr left = parse_factor();
    while (eat('*')) {
      Expr right = parse_factor();
      if (left.kind != Expr::Kind::Number && right.kind != Expr::Kind::Number)
        fail("multiplication requires a numeric scalar on one side");
      left = binary(Expr::Kind::Mul, std::move(left), std::move(right));
    }
    return left;
  }

  Expr parse_factor() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of expression");
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (c == '(') {
      ++pos;
      Expr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    std::string name = ident();
    if (name == "sum" && eat('(')) {
      std::string field = ident();
      if (!eat(')')) fail("expected ')'");
      Expr e;
      e.kind = Expr::Kind::Sum;
      e.field = std::move(field);
      return e;
    }
    Expr e;
    e.kind = Expr::Kind::Field;
    e.field = std::move(name);
    return e;
  }

  Expr parse_number() {
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos < src.size() && src[pos] == '.') {
      ++pos;
      if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        fail("malformed number");
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
    }
    double value = std::stod(std::string(src.substr(start, pos - start)));
    if (pos < src.size() && src[pos] == '%') {
      ++pos;
      value /= 100.0;
    }
    Expr e;
    e.kind = Expr::Kind::Number;
    e.number = value;
    return e;
  }

  void expect_end() {
    skip_ws();
    if (pos < src.size()) fail("trailing characters");
  }

  static Expr binary(Expr::Kind kind, Expr a, Expr b) {
    Expr e;
    e.kind = kind;
    e.lhs = std::make_shared<Expr>(std::move(a));
    e.rhs = std::make_shared<Expr>(std::move(b));
    return e;
  }
};

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) words.emplace_back(line.substr(start, i - start));
  }
  return words;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

RuleSet parse_ruleset(std::string_view text, std::string_view source_name) {
  std::vector<FieldSpec> fields;
  std::vector<ArithmeticRule> rules;

  const std::string where =
      source_name.empty() ? "ruleset" : std::string(source_name);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;

    auto fail = [&](const std::string& msg) -> void {
      throw DataError(where + ":" + std::to_string(line_no) + ": " + msg);
    };

    try {
      if (line.rfind("field ", 0) == 0) {
        auto words = split_words(std::string_view(line).substr(6));
        if (words.size() < 2 || words.size() > 3)
          fail("expected: field NAME mandatory|optional [single|sum]");
        FieldSpec spec;
        spec.name = words[0];
        if (words[1] == "mandatory")
          spec.mandatory = true;
        else if (words[1] == "optional")
          spec.mandatory = false;
        else
          fail("expected 'mandatory' or 'optional', got '" + words[1] + "'");
        if (words.size() == 3) {
          if (words[2] == "sum")
            spec.sum_spans = true;
          else if (words[2] != "single")
            fail("expected 'single' or 'sum', got '" + words[2] + "'");
        }
        fields.push_back(std::move(spec));
      } else if (line.rfind("rule ", 0) == 0) {
        const std::string body = line.substr(5);
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) fail("rule is missing '='");
        ExprParser lhs_parser{std::string_view(body).substr(0, eq)};
        Expr lhs = lhs_parser.parse_expr();
        lhs_parser.expect_end();
        if (lhs.kind != Expr::Kind::Field)
          fail("left-hand side of a rule must be a single field");
        ExprParser rhs_parser{std::string_view(body).substr(eq + 1)};
        Expr rhs = rhs_parser.parse_expr();
        rhs_parser.expect_end();
        rules.push_back({trim(body), std::move(lhs), std::move(rhs)});
      } else {
        fail("expected a 'field' or 'rule' line");
      }
    } catch (const std::invalid_argument& e) {
      throw DataError(where + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }

  try {
    return RuleSet(std::move(fields), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw DataError(where + ": " + e.what());
  }
}

RuleSet load_ruleset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open rule set file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ruleset(buf.str(), path);
}

}  // namespace lazyk
