// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lazyk/token.hpp"

namespace lazyk {

// ---------------------------------------------------------------------------
// BIO labels and spans
// ---------------------------------------------------------------------------

enum class BioKind { Outside, Begin, Inside };

struct BioLabel {
  BioKind kind;
  std::string_view cls;  // empty for Outside
};

/// Splits a label name into its BIO kind and class. Accepts "O", "B-x", "B_x",
/// "I-x", "I_x". Throws std::invalid_argument on anything else.
BioLabel parse_bio_label(std::string_view name);

/// True iff every I-labeled token is preceded by a B or I label of the same
/// class. Throws std::invalid_argument on a label outside the BIO scheme.
bool bio_valid(std::span<const std::string> labels);

struct Span {
  std::string text;
  std::size_t first = 0;  // token range [first, last)
  std::size_t last = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

/// Assembles maximal B..I runs into per-class spans. Span text joins tokens
/// with a single space, except tokens flagged joins_previous which concatenate
/// directly. Requires bio_valid(labels); throws std::invalid_argument
/// otherwise.
std::map<std::string, std::vector<Span>> extract_spans(
    std::span<const Token> tokens, std::span<const std::string> labels);

// ---------------------------------------------------------------------------
// Amounts
// ---------------------------------------------------------------------------

/// Separator convention used when a document's amount format is ambiguous.
/// Auto resolves a lone separator followed by exactly three digits as a
/// thousands group ("56.000" -> 56000).
enum class AmountLocale { Auto, DecimalPoint, DecimalComma };

std::optional<AmountLocale> parse_locale(std::string_view name);
std::string_view locale_name(AmountLocale locale);

/// A monetary value in minor units (hundredths of the currency unit), plus
/// the raw text it was parsed from.
struct Amount {
  std::int64_t minor_units = 0;
  std::string raw;

  friend bool operator==(const Amount&, const Amount&) = default;
};

/// Parses an amount out of free text: strips surrounding currency symbols and
/// junk, then interprets digit groups per the locale. Returns nullopt for
/// text with no usable number in it.
std::optional<Amount> parse_amount(std::string_view text,
                                   AmountLocale locale = AmountLocale::Auto);

// ---------------------------------------------------------------------------
// Arithmetic rules
// ---------------------------------------------------------------------------

struct FieldSpec {
  std::string name;
  bool mandatory = true;
  bool sum_spans = false;  // aggregate across spans instead of first-span

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct Expr {
  enum class Kind { Number, Field, Sum, Add, Sub, Mul };
  Kind kind = Kind::Number;
  double number = 0.0;     // Number (whole currency units, or a scalar)
  std::string field;       // Field / Sum
  std::shared_ptr<const Expr> lhs, rhs;
};

struct ArithmeticRule {
  std::string text;  // source form, used for naming and reports
  Expr lhs;
  Expr rhs;
};

enum class RuleOutcome { Satisfied, Violated, NotEvaluated };

/// Parse results for one field's spans, in document order.
struct FieldValues {
  std::vector<std::optional<Amount>> spans;
};
using ExtractedAmounts = std::map<std::string, FieldValues>;

/// Evaluates one rule against extracted field values. A mandatory field with
/// no spans makes the rule NotEvaluated; absent optional fields contribute 0;
/// an unparseable referenced span makes the rule Violated. Equality holds
/// within one minor unit or a relative error of 1e-6.
RuleOutcome eval_rule(const ArithmeticRule& rule, const ExtractedAmounts& fields,
                      std::span<const FieldSpec> specs);

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

/// A named black-box predicate over (tokens, labels). `parts` lists the
/// members of a conjunction for introspection; evaluation always goes through
/// `pred`, which composite constraints implement as a fused pass.
struct Constraint {
  std::string name;
  std::function<bool(std::span<const Token>, std::span<const std::string>)>
      pred;
  std::vector<Constraint> parts;

  bool evaluate(std::span<const Token> tokens,
                std::span<const std::string> labels) const {
    return pred(tokens, labels);
  }

  static Constraint always_true();
  static Constraint always_false();
  static Constraint bio();
  static Constraint conjunction(std::string name, std::vector<Constraint> parts);
};

/// A declarative constraint set: BIO validity, per-field parseability, and a
/// list of arithmetic rules over declared fields.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::vector<FieldSpec> fields, std::vector<ArithmeticRule> rules);

  const std::vector<FieldSpec>& fields() const { return fields_; }
  const std::vector<ArithmeticRule>& rules() const { return rules_; }
  const FieldSpec* find_field(std::string_view name) const;

  /// Extracts and parses the declared fields from a labeled document.
  /// Requires bio_valid(labels).
  ExtractedAmounts extract_amounts(std::span<const Token> tokens,
                                   std::span<const std::string> labels,
                                   AmountLocale locale) const;

  /// Full check: BIO validity, every declared field's spans parseable, and
  /// no rule violated (NotEvaluated counts as satisfied).
  bool satisfied(std::span<const Token> tokens,
                 std::span<const std::string> labels,
                 AmountLocale locale = AmountLocale::Auto) const;

  /// Wraps the rule set as a Constraint bound to a document locale. The parts
  /// list the BIO, parseability and per-rule members.
  Constraint to_constraint(std::string name,
                           AmountLocale locale = AmountLocale::Auto) const;

 private:
  std::vector<FieldSpec> fields_;
  std::vector<ArithmeticRule> rules_;
};

enum class Dataset { Cord, WildReceipt, Docile };

std::optional<Dataset> parse_dataset(std::string_view name);

/// The built-in constraint set for a dataset. Throws std::invalid_argument on
/// an unknown name.
const RuleSet& dataset_ruleset(Dataset dataset);
Constraint dataset_constraints(std::string_view name,
                               AmountLocale locale = AmountLocale::Auto);

// ---------------------------------------------------------------------------
// Rule set files (grammar documented in docs/constraints.md)
// ---------------------------------------------------------------------------

/// Parses rule set text ("field ..." / "rule ..." lines). Throws DataError
/// with a line number on malformed input.
RuleSet parse_ruleset(std::string_view text, std::string_view source_name = "");

/// Loads a rule set from a file. Throws DataError on IO or parse failure.
RuleSet load_ruleset(const std::string& path);

}  // namespace lazyk
