// SPDX-License-Identifier: Apache-2.0
#include "lazyk/label_seq.hpp"

#include <stdexcept>

namespace lazyk {

double seq_cost(const ProbTable& table, std::span<const std::int32_t> ranks) {
  if (ranks.size() != table.n())
    throw std::invalid_argument("seq_cost: rank vector length mismatch");
  double lp = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const std::int32_t r = ranks[i];
    if (r < 0 || static_cast<std::size_t>(r) >= table.num_labels())
      throw std::out_of_range("seq_cost: rank out of range at position " +
                              std::to_string(i));
    lp += table.logp_at_rank(i, r);
  }
  return -lp;
}

LabelSeq make_seq(const ProbTable& table, std::vector<std::int32_t> ranks) {
  LabelSeq s;
  s.cost = seq_cost(table, ranks);
  s.ranks = std::move(ranks);
  return s;
}

std::int64_t seq_distance(const LabelSeq& a, const LabelSeq& b) {
  if (a.ranks.size() != b.ranks.size())
    throw std::invalid_argument("seq_distance: length mismatch");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.ranks.size(); ++i)
    d += static_cast<std::int64_t>(b.ranks[i]) - a.ranks[i];
  return d;
}

std::vector<std::string> labels_of(const ProbTable& table, const LabelSeq& seq,
                                   std::span<const std::string> vocab) {
  if (vocab.size() != table.num_labels())
    throw std::invalid_argument("labels_of: vocab length mismatch");
  if (seq.ranks.size() != table.n())
    throw std::invalid_argument("labels_of: rank vector length mismatch");
  std::vector<std::string> out;
  out.reserve(seq.ranks.size());
  for (std::size_t i = 0; i < seq.ranks.size(); ++i)
    out.push_back(
        vocab[static_cast<std::size_t>(table.label_at_rank(i, seq.ranks[i]))]);
  return out;
}

}  // namespace lazyk
