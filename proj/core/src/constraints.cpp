// SPDX-License-Identifier: Apache-2.0
#include "lazyk/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lazyk {

// ---------------------------------------------------------------------------
// BIO labels and spans
// ---------------------------------------------------------------------------

BioLabel parse_bio_label(std::string_view name) {
  if (name == "O") return {BioKind::Outside, {}};
  if (name.size() >= 3 && (name[0] == 'B' || name[0] == 'I') &&
      (name[1] == '-' || name[1] == '_')) {
    return {name[0] == 'B' ? BioKind::Begin : BioKind::Inside, name.substr(2)};
  }
  throw std::invalid_argument("unknown label prefix: '" + std::string(name) +
                              "'");
}

bool bio_valid(std::span<const std::string> labels) {
  std::string_view open_cls;  // class of the B/I run ending at the previous token
  bool open = false;
  for (const auto& name : labels) {
    const BioLabel lab = parse_bio_label(name);
    switch (lab.kind) {
      case BioKind::Outside:
        open = false;
        break;
      case BioKind::Begin:
        open = true;
        open_cls = lab.cls;
        break;
      case BioKind::Inside:
        if (!open || open_cls != lab.cls) return false;
        break;
    }
  }
  return true;
}

std::map<std::string, std::vector<Span>> extract_spans(
    std::span<const Token> tokens, std::span<const std::string> labels) {
  if (tokens.size() != labels.size())
    throw std::invalid_argument("extract_spans: tokens/labels length mismatch");
  if (!bio_valid(labels))
    throw std::invalid_argument("extract_spans: labels are not BIO-valid");

  std::map<std::string, std::vector<Span>> out;
  std::string cur_cls;
  Span cur;
  bool open = false;
  auto close = [&] {
    if (open) out[cur_cls].push_back(std::move(cur));
    open = false;
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const BioLabel lab = parse_bio_label(labels[i]);
    if (lab.kind == BioKind::Begin) {
      close();
      open = true;
      cur_cls.assign(lab.cls);
      cur = {tokens[i].text, i, i + 1};
    } else if (lab.kind == BioKind::Inside) {
      if (!tokens[i].joins_previous) cur.text += ' ';
      cur.text += tokens[i].text;
      cur.last = i + 1;
    } else {
      close();
    }
  }
  close();
  return out;
}

// ---------------------------------------------------------------------------
// Amounts
// ---------------------------------------------------------------------------

std::optional<AmountLocale> parse_locale(std::string_view name) {
  if (name == "auto") return AmountLocale::Auto;
  if (name == "decimal_point") return AmountLocale::DecimalPoint;
  if (name == "decimal_comma") return AmountLocale::DecimalComma;
  return std::nullopt;
}

std::string_view locale_name(AmountLocale locale) {
  switch (locale) {
    case AmountLocale::Auto: return "auto";
    case AmountLocale::DecimalPoint: return "decimal_point";
    case AmountLocale::DecimalComma: return "decimal_comma";
  }
  return "auto";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_sep(char c) { return c == '.' || c == ','; }

struct NumberParts {
  std::string int_digits;
  std::string frac_digits;
};

// Splits the numeric core into integer/fraction digits, resolving the roles
// of '.' and ',' from the pattern and the locale. Returns nullopt when the
// core does not form a well-formed number under the locale.
std::optional<NumberParts> split_core(std::string_view core,
                                      AmountLocale locale) {
  std::vector<std::string> groups(1);
  std::vector<char> seps;
  for (char c : core) {
    if (is_digit(c)) {
      groups.back() += c;
    } else {
      seps.push_back(c);
      groups.emplace_back();
    }
  }

  auto grouped_int = [&](std::size_t count) -> std::optional<std::string> {
    // groups[0..count] form the integer part: first group 1-3 digits,
    // the rest exactly 3
    if (groups[0].empty() || groups[0].size() > 3) return std::nullopt;
    std::string digits = groups[0];
    for (std::size_t g = 1; g <= count; ++g) {
      if (groups[g].size() != 3) return std::nullopt;
      digits += groups[g];
    }
    return digits;
  };

  if (seps.empty()) return NumberParts{groups[0], ""};

  const char dec_char = locale == AmountLocale::DecimalComma ? ',' : '.';
  const char grp_char = locale == AmountLocale::DecimalComma ? '.' : ',';

  const bool has_dot = std::count(seps.begin(), seps.end(), '.') > 0;
  const bool has_comma = std::count(seps.begin(), seps.end(), ',') > 0;

  if (has_dot && has_comma) {
    // the decimal separator is the last one; it must be unique and the other
    // kind must form valid thousands groups
    const char last = seps.back();
    if (std::count(seps.begin(), seps.end(), last) != 1) return std::nullopt;
    if (locale != AmountLocale::Auto && last != dec_char) return std::nullopt;
    auto digits = grouped_int(seps.size() - 1);
    if (!digits) return std::nullopt;
    return NumberParts{*digits, groups.back()};
  }

  const char kind = seps[0];
  if (seps.size() > 1) {
    // repeated separator: thousands grouping only
    if (locale != AmountLocale::Auto && kind == dec_char) return std::nullopt;
    auto digits = grouped_int(seps.size());
    if (!digits) return std::nullopt;
    return NumberParts{*digits, ""};
  }

  // single separator
  const std::string& head = groups[0];
  const std::string& tail = groups[1];
  bool decimal;
  if (locale == AmountLocale::Auto) {
    decimal = tail.size() != 3 || head.empty();
  } else if (kind == dec_char) {
    decimal = true;
  } else {
    decimal = false;
    (void)grp_char;
  }
  if (decimal) {
    if (tail.empty()) return std::nullopt;
    return NumberParts{head, tail};
  }
  auto digits = grouped_int(1);
  if (!digits) return std::nullopt;
  return NumberParts{*digits, ""};
}

}  // namespace

std::optional<Amount> parse_amount(std::string_view text, AmountLocale locale) {
  // locate the numeric core: the contiguous [0-9.,] run around the first digit
  std::size_t first = text.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_digit(text[i])) {
      first = i;
      break;
    }
  }
  if (first == text.size()) return std::nullopt;

  std::size_t start = first;
  if (start > 0 && is_sep(text[start - 1])) --start;  // leading ".50"
  std::size_t end = first;
  while (end < text.size() && (is_digit(text[end]) || is_sep(text[end]))) ++end;
  while (end > start + 1 && is_sep(text[end - 1])) --end;  // trailing "56."

  // a second digit run means the text is not a single amount
  for (std::size_t i = end; i < text.size(); ++i)
    if (is_digit(text[i])) return std::nullopt;

  bool negative = false;
  for (std::size_t i = 0; i < start; ++i) {
    if (text[i] == '-') {
      if (negative) return std::nullopt;
      negative = true;
    }
  }

  auto parts = split_core(text.substr(start, end - start), locale);
  if (!parts) return std::nullopt;
  if (parts->int_digits.empty() && parts->frac_digits.empty())
    return std::nullopt;
  if (parts->int_digits.size() > 15) return std::nullopt;  // overflow guard

  std::int64_t units = 0;
  for (char c : parts->int_digits) units = units * 10 + (c - '0');

  const std::string& frac = parts->frac_digits;
  std::int64_t cents = 0;
  if (!frac.empty()) cents = (frac[0] - '0') * 10;
  if (frac.size() >= 2) cents += frac[1] - '0';
  if (frac.size() >= 3 && frac[2] >= '5') ++cents;  // round half up

  std::int64_t value = units * 100 + cents;
  if (negative) value = -value;
  return Amount{value, std::string(text)};
}

// ---------------------------------------------------------------------------
// Rule evaluation
// ---------------------------------------------------------------------------

namespace {

struct EvalVal {
  enum State { Ok, MissingMandatory, Unparseable } state = Ok;
  double v = 0.0;  // whole currency units
};

const FieldSpec* find_spec(std::span<const FieldSpec> specs,
                           std::string_view name) {
  for (const auto& s : specs)
    if (s.name == name) return &s;
  return nullptr;
}

EvalVal resolve_field(std::string_view name, bool sum_spans,
                      const ExtractedAmounts& fields,
                      std::span<const FieldSpec> specs) {
  const FieldSpec* spec = find_spec(specs, name);
  if (!spec)
    throw std::invalid_argument("rule references undeclared field '" +
                                std::string(name) + "'");
  auto it = fields.find(std::string(name));
  if (it == fields.end() || it->second.spans.empty()) {
    if (spec->mandatory) return {EvalVal::MissingMandatory, 0.0};
    return {EvalVal::Ok, 0.0};
  }
  const auto& spans = it->second.spans;
  if (sum_spans) {
    double total = 0.0;
    for (const auto& a : spans) {
      if (!a) return {EvalVal::Unparseable, 0.0};
      total += static_cast<double>(a->minor_units) / 100.0;
    }
    return {EvalVal::Ok, total};
  }
  if (!spans.front()) return {EvalVal::Unparseable, 0.0};
  return {EvalVal::Ok, static_cast<double>(spans.front()->minor_units) / 100.0};
}

EvalVal eval_expr(const Expr& e, const ExtractedAmounts& fields,
                  std::span<const FieldSpec> specs) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return {EvalVal::Ok, e.number};
    case Expr::Kind::Field: {
      const FieldSpec* spec = find_spec(specs, e.field);
      return resolve_field(e.field, spec && spec->sum_spans, fields, specs);
    }
    case Expr::Kind::Sum:
      return resolve_field(e.field, true, fields, specs);
    default: {
      EvalVal a = eval_expr(*e.lhs, fields, specs);
      EvalVal b = eval_expr(*e.rhs, fields, specs);
      if (a.state == EvalVal::MissingMandatory ||
          b.state == EvalVal::MissingMandatory)
        return {EvalVal::MissingMandatory, 0.0};
      if (a.state == EvalVal::Unparseable || b.state == EvalVal::Unparseable)
        return {EvalVal::Unparseable, 0.0};
      double v = 0.0;
      if (e.kind == Expr::Kind::Add) v = a.v + b.v;
      if (e.kind == Expr::Kind::Sub) v = a.v - b.v;
      if (e.kind == Expr::Kind::Mul) v = a.v * b.v;
      return {EvalVal::Ok, v};
    }
  }
}

bool amounts_equal(double lhs, double rhs) {
  const double diff = std::fabs(lhs - rhs);
  // one minor unit, or relative 1e-6
  return diff <= 0.01 + 1e-9 ||
         diff <= 1e-6 * std::max(std::fabs(lhs), std::fabs(rhs));
}

}  // namespace

RuleOutcome eval_rule(const ArithmeticRule& rule, const ExtractedAmounts& fields,
                      std::span<const FieldSpec> specs) {
  const EvalVal lhs = eval_expr(rule.lhs, fields, specs);
  const EvalVal rhs = eval_expr(rule.rhs, fields, specs);
  if (lhs.state == EvalVal::MissingMandatory ||
      rhs.state == EvalVal::MissingMandatory)
    return RuleOutcome::NotEvaluated;
  if (lhs.state == EvalVal::Unparseable || rhs.state == EvalVal::Unparseable)
    return RuleOutcome::Violated;
  return amounts_equal(lhs.v, rhs.v) ? RuleOutcome::Satisfied
                                     : RuleOutcome::Violated;
}

// ---------------------------------------------------------------------------
// Constraint
// ---------------------------------------------------------------------------

Constraint Constraint::always_true() {
  return {"true", [](auto, auto) { return true; }, {}};
}

Constraint Constraint::always_false() {
  return {"false", [](auto, auto) { return false; }, {}};
}

Constraint Constraint::bio() {
  return {"bio",
          [](std::span<const Token>, std::span<const std::string> labels) {
            return bio_valid(labels);
          },
          {}};
}

Constraint Constraint::conjunction(std::string name,
                                   std::vector<Constraint> parts) {
  auto preds = std::make_shared<std::vector<Constraint>>(parts);
  return {std::move(name),
          [preds](std::span<const Token> tokens,
                  std::span<const std::string> labels) {
            for (const auto& c : *preds)
              if (!c.evaluate(tokens, labels)) return false;
            return true;
          },
          std::move(parts)};
}

// ---------------------------------------------------------------------------
// RuleSet
// ---------------------------------------------------------------------------

namespace {

void collect_fields(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Field || e.kind == Expr::Kind::Sum)
    out.push_back(e.field);
  if (e.lhs) collect_fields(*e.lhs, out);
  if (e.rhs) collect_fields(*e.rhs, out);
}

}  // namespace

RuleSet::RuleSet(std::vector<FieldSpec> fields, std::vector<ArithmeticRule> rules)
    : fields_(std::move(fields)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < fields_.size(); ++i)
    for (std::size_t j = i + 1; j < fields_.size(); ++j)
      if (fields_[i].name == fields_[j].name)
        throw std::invalid_argument("duplicate field '" + fields_[i].name +
                                    "'");
  for (const auto& rule : rules_) {
    std::vector<std::string> refs;
    collect_fields(rule.lhs, refs);
    collect_fields(rule.rhs, refs);
    for (const auto& f : refs)
      if (!find_field(f))
        throw std::invalid_argument("rule '" + rule.text +
                                    "' references undeclared field '" + f +
                                    "'");
  }
}

const FieldSpec* RuleSet::find_field(std::string_view name) const {
  return find_spec(fields_, name);
}

ExtractedAmounts RuleSet::extract_amounts(std::span<const Token> tokens,
                                          std::span<const std::string> labels,
                                          AmountLocale locale) const {
  const auto spans = extract_spans(tokens, labels);
  ExtractedAmounts out;
  for (const auto& spec : fields_) {
    auto it = spans.find(spec.name);
    if (it == spans.end()) continue;
    FieldValues& vals = out[spec.name];
    vals.spans.reserve(it->second.size());
    for (const auto& span : it->second)
      vals.spans.push_back(parse_amount(span.text, locale));
  }
  return out;
}

bool RuleSet::satisfied(std::span<const Token> tokens,
                        std::span<const std::string> labels,
                        AmountLocale locale) const {
  if (!bio_valid(labels)) return false;
  const ExtractedAmounts amounts = extract_amounts(tokens, labels, locale);
  for (const auto& [field, vals] : amounts)
    for (const auto& a : vals.spans)
      if (!a) return false;  // declared numeric field must parse
  for (const auto& rule : rules_)
    if (eval_rule(rule, amounts, fields_) == RuleOutcome::Violated)
      return false;
  return true;
}

Constraint RuleSet::to_constraint(std::string name, AmountLocale locale) const {
  auto self = std::make_shared<RuleSet>(*this);

  std::vector<Constraint> parts;
  parts.push_back(Constraint::bio());
  parts.push_back(
      {"parseable",
       [self, locale](std::span<const Token> tokens,
                      std::span<const std::string> labels) {
         if (!bio_valid(labels)) return false;
         for (const auto& [field, vals] :
              self->extract_amounts(tokens, labels, locale))
           for (const auto& a : vals.spans)
             if (!a) return false;
         return true;
       },
       {}});
  for (std::size_t r = 0; r < self->rules_.size(); ++r) {
    parts.push_back(
        {self->rules_[r].text,
         [self, locale, r](std::span<const Token> tokens,
                           std::span<const std::string> labels) {
           if (!bio_valid(labels)) return false;
           const auto amounts = self->extract_amounts(tokens, labels, locale);
           return eval_rule(self->rules_[r], amounts, self->fields_) !=
                  RuleOutcome::Violated;
         },
         {}});
  }

  return {std::move(name),
          [self, locale](std::span<const Token> tokens,
                         std::span<const std::string> labels) {
            return self->satisfied(tokens, labels, locale);
          },
          std::move(parts)};
}

// ---------------------------------------------------------------------------
// Built-in data sets
// ---------------------------------------------------------------------------

std::optional<Dataset> parse_dataset(std::string_view name) {
  if (name == "cord") return Dataset::Cord;
  if (name == "wildreceipt") return Dataset::WildReceipt;
  if (name == "docile") return Dataset::Docile;
  return std::nullopt;
}

namespace {

constexpr std::string_view kCordRules = R"(
field menu.sub.price mandatory sum
field sub_total.subtotal_price mandatory
field sub_total.tax_price mandatory
field sub_total.service_price optional
field sub_total.discount_price optional
field total.total_price mandatory
field total.cashprice mandatory
field total.changeprice mandatory

rule menu.sub.price = sub_total.subtotal_price
rule sub_total.tax_price = 10% * (sub_total.subtotal_price + sub_total.service_price)
rule total.cashprice = total.total_price + total.changeprice
rule total.total_price = sub_total.subtotal_price + sub_total.tax_price + sub_total.service_price - sub_total.discount_price
)";

constexpr std::string_view kWildReceiptRules = R"(
field total_value mandatory
field subtotal_value mandatory
field tax_value mandatory
field prod_price_value mandatory

rule total_value = subtotal_value + tax_value
rule subtotal_value = sum(prod_price_value)
)";

constexpr std::string_view kDocileRules = R"(
field amount_total_gross mandatory
field amount_total_net mandatory
field amount_total_tax mandatory
field amount_due mandatory
field amount_paid mandatory

rule amount_total_gross = amount_total_net + amount_total_tax
rule amount_due = amount_paid + amount_total_gross
)";

}  // namespace

const RuleSet& dataset_ruleset(Dataset dataset) {
  static const RuleSet cord = parse_ruleset(kCordRules, "cord");
  static const RuleSet wildreceipt =
      parse_ruleset(kWildReceiptRules, "wildreceipt");
  static const RuleSet docile = parse_ruleset(kDocileRules, "docile");
  switch (dataset) {
    case Dataset::Cord: return cord;
    case Dataset::WildReceipt: return wildreceipt;
    case Dataset::Docile: return docile;
  }
  throw std::invalid_argument("unknown dataset");
}

Constraint dataset_constraints(std::string_view name, AmountLocale locale) {
  const auto dataset = parse_dataset(name);
  if (!dataset)
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "'");
  return dataset_ruleset(*dataset).to_constraint(std::string(name), locale);
}

}  // namespace lazyk
