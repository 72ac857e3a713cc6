// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "lazyk/constraints.hpp"
#include "lazyk/enumerator.hpp"
#include "lazyk/label_seq.hpp"
#include "lazyk/prob_table.hpp"
#include "lazyk/token.hpp"

namespace lazyk {

enum class DecodeStatus { Satisfied, BudgetExhausted, SearchExhausted };

std::string_view decode_status_name(DecodeStatus status);

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::SearchExhausted;
  std::optional<LabelSeq> sequence;  // set iff status == Satisfied
  std::uint64_t sequences_examined = 0;
  double elapsed_seconds = 0.0;
  double constraint_seconds = 0.0;  // time spent inside the constraint
};

struct DecodeOptions {
  std::uint64_t max_k = 1;
  // optional alternative stop: cumulative probability mass of the examined
  // sequences exceeding this threshold ends the search
  std::optional<double> mass_threshold;
};

/// Examines label sequences in decreasing probability order and returns the
/// first one satisfying the constraint. Constraint evaluation happens at most
/// once per distinct sequence. Stops after max_k examinations
/// (BudgetExhausted) or when no sequence remains (SearchExhausted).
///
/// Throws std::invalid_argument when max_k < 1 or the vocabulary/token counts
/// do not match the table.
DecodeOutcome lazy_k_decode(const ProbTable& table,
                            std::span<const std::string> vocab,
                            std::span<const Token> tokens,
                            const Constraint& constraint,
                            const DecodeOptions& options);

}  // namespace lazyk
