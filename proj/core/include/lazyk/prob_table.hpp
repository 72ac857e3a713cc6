// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lazyk {

/// Per-document table of label log-probabilities, one row per token position.
///
/// Each row additionally carries a rank order: a permutation of the label
/// indices sorted by strictly decreasing log-probability, ties broken by
/// ascending label index. Labels that are impossible at a position are stored
/// as -inf and therefore sort last. Immutable after construction and safe to
/// share across threads.
class ProbTable {
 public:
  /// Builds a table from natural-log probabilities. Rows may contain -inf for
  /// impossible labels. Throws std::invalid_argument on an empty or ragged
  /// matrix, a NaN or +inf entry, or a row with no finite entry.
  static ProbTable from_log(const std::vector<std::vector<double>>& logp);

  /// Builds a table from raw probabilities in [0, 1]; values are converted
  /// with ln (0 maps to -inf). Throws std::invalid_argument on out-of-range
  /// or NaN entries, and on the structural errors of from_log.
  static ProbTable from_raw(const std::vector<std::vector<double>>& probs);

  std::size_t n() const { return n_; }
  std::size_t num_labels() const { return l_; }

  /// Log-probability of label `label` at position `pos`.
  double logp(std::size_t pos, std::size_t label) const {
    return logp_[pos * l_ + label];
  }

  /// Log-probability of the rank-th most probable label at `pos`.
  double logp_at_rank(std::size_t pos, std::int32_t rank) const {
    return logp_[pos * l_ + static_cast<std::size_t>(
                                rank_order_[pos * l_ + rank])];
  }

  /// Label index holding the given rank at `pos` (rank 0 = most probable).
  std::int32_t label_at_rank(std::size_t pos, std::int32_t rank) const {
    return rank_order_[pos * l_ + rank];
  }

  /// Rank held by label `label` at `pos` (inverse of label_at_rank).
  std::int32_t rank_of_label(std::size_t pos, std::size_t label) const {
    return label_rank_[pos * l_ + label];
  }

  /// The rank permutation for one position.
  std::span<const std::int32_t> rank_row(std::size_t pos) const {
    return {rank_order_.data() + pos * l_, l_};
  }

 private:
  ProbTable() = default;

  std::size_t n_ = 0;
  std::size_t l_ = 0;
  std::vector<double> logp_;             // n x l, row-major
  std::vector<std::int32_t> rank_order_; // n x l, rank -> label index
  std::vector<std::int32_t> label_rank_; // n x l, label index -> rank
};

}  // namespace lazyk
