// SPDX-License-Identifier: Apache-2.0
#include "lazyk/decode.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lazyk {

std::string_view decode_status_name(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::Satisfied: return "satisfied";
    case DecodeStatus::BudgetExhausted: return "budget_exhausted";
    case DecodeStatus::SearchExhausted: return "search_exhausted";
  }
  return "unknown";
}

DecodeOutcome lazy_k_decode(const ProbTable& table,
                            std::span<const std::string> vocab,
                            std::span<const Token> tokens,
                            const Constraint& constraint,
                            const DecodeOptions& options) {
  if (options.max_k < 1)
    throw std::invalid_argument("lazy_k_decode: max_k must be >= 1");
  if (vocab.size() != table.num_labels())
    throw std::invalid_argument("lazy_k_decode: vocab/table size mismatch");
  if (tokens.size() != table.n())
    throw std::invalid_argument("lazy_k_decode: tokens/table size mismatch");

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  DecodeOutcome out;
  LazyEnumerator enumerator(table);
  std::vector<std::string> labels(table.n());
  double mass = 0.0;

  while (true) {
    auto seq = enumerator.next();
    if (!seq) {
      out.status = DecodeStatus::SearchExhausted;
      break;
    }
    ++out.sequences_examined;

    for (std::size_t i = 0; i < seq->ranks.size(); ++i)
      labels[i] = vocab[static_cast<std::size_t>(
          table.label_at_rank(i, seq->ranks[i]))];

    const auto c0 = clock::now();
    const bool ok = constraint.evaluate(tokens, labels);
    out.constraint_seconds +=
        std::chrono::duration<double>(clock::now() - c0).count();

    if (ok) {
      out.status = DecodeStatus::Satisfied;
      out.sequence = std::move(*seq);
      break;
    }

    mass += std::exp(-seq->cost);
    const bool budget_hit = out.sequences_examined >= options.max_k;
    const bool mass_hit =
        options.mass_threshold && mass > *options.mass_threshold;
    if (budget_hit || mass_hit) {
      out.status = enumerator.has_more() ? DecodeStatus::BudgetExhausted
                                         : DecodeStatus::SearchExhausted;
      break;
    }
  }

  out.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return out;
}

}  // namespace lazyk
