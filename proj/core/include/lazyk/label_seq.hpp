// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lazyk/prob_table.hpp"

namespace lazyk {

/// A full label assignment in rank representation: ranks[i] is the index of
/// the chosen label within position i's probability-sorted order (rank 0 =
/// most probable). cost is the summed negative log-probability.
struct LabelSeq {
  std::vector<std::int32_t> ranks;
  double cost = 0.0;

  friend bool operator==(const LabelSeq& a, const LabelSeq& b) {
    return a.ranks == b.ranks;
  }
};

/// Cost of selecting the given ranks: sum over positions of -logp of the
/// selected label. A -inf probability anywhere yields +inf cost. Throws
/// std::out_of_range on a rank outside [0, l) and std::invalid_argument on a
/// length mismatch.
double seq_cost(const ProbTable& table, std::span<const std::int32_t> ranks);

/// Builds a LabelSeq with its cost computed from the table.
LabelSeq make_seq(const ProbTable& table, std::vector<std::int32_t> ranks);

/// Signed rank distance: sum over positions of b.ranks[i] - a.ranks[i].
/// Throws std::invalid_argument on a length mismatch.
std::int64_t seq_distance(const LabelSeq& a, const LabelSeq& b);

/// Maps a sequence back to label names via the position-wise rank order.
/// vocab must have one name per label column.
std::vector<std::string> labels_of(const ProbTable& table, const LabelSeq& seq,
                                   std::span<const std::string> vocab);

}  // namespace lazyk
