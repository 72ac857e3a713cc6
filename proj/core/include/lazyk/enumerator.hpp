// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lazyk/label_seq.hpp"
#include "lazyk/prob_table.hpp"

namespace lazyk {

using RankVector = std::vector<std::int32_t>;

struct RankVectorHash {
  std::size_t operator()(const RankVector& v) const {
    // FNV-1a over the rank values
    std::uint64_t h = 1469598103934665603ull;
    for (std::int32_t x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Lazy best-first enumeration of label sequences in non-increasing
/// probability order with partial expansion: popping a state inserts only its
/// next-best unexplored single-edit child, so the heap holds at most one
/// entry per examined state.
///
/// A single-edit child increments exactly one position's rank by one. For
/// each expanded state the incrementable positions are sorted once by the
/// cost delta of that increment (ascending, ties by descending position) and
/// cached; the cache is dropped when the state has no children left.
class LazyEnumerator {
 public:
  explicit LazyEnumerator(const ProbTable& table);

  /// Yields the next sequence in enumeration order, starting with the
  /// all-rank-zero sequence. Returns nullopt when the space is exhausted.
  std::optional<LabelSeq> next();

  /// The frontier[state]-th cheapest single-edit child of `state`, or nullopt
  /// when no untried child remains. Does not advance the frontier counter.
  /// Throws std::invalid_argument if `state` is not in the frontier.
  std::optional<RankVector> next_best(const RankVector& state);

  /// Advances `state`'s counter past children already in the frontier; if an
  /// unseen child remains, registers it (counter 0) and pushes a heap entry
  /// for `state` keyed by the child's cost. Otherwise the state retires and
  /// its edit cache is dropped.
  void add_next_best(const RankVector& state);

  /// Registers a state in the frontier with counter 0 (no-op if present).
  void register_state(const RankVector& state);

  bool frontier_contains(const RankVector& state) const {
    return frontier_.contains(state);
  }
  std::size_t heap_size() const { return heap_.size(); }
  std::size_t frontier_size() const { return frontier_.size(); }
  std::size_t yielded() const { return yielded_; }

 private:
  struct HeapEntry {
    RankVector state;
    double priority;        // cost of the state's next unexplored child
    std::uint64_t sequence; // insertion order, breaks priority ties
  };

  const std::vector<std::int32_t>& edit_order(const RankVector& state);
  void heap_push(HeapEntry e);
  HeapEntry heap_pop();

  const ProbTable& table_;
  std::vector<HeapEntry> heap_;  // binary min-heap on (priority, sequence)
  std::unordered_map<RankVector, std::int32_t, RankVectorHash> frontier_;
  std::unordered_map<RankVector, std::vector<std::int32_t>, RankVectorHash>
      edit_cache_;
  std::uint64_t push_count_ = 0;
  std::size_t yielded_ = 0;
  bool started_ = false;
  // adds deferred until the caller asks for another sequence, mirroring the
  // early return on constraint satisfaction
  std::optional<RankVector> pending_child_;
  std::optional<RankVector> pending_parent_;
};

}  // namespace lazyk
