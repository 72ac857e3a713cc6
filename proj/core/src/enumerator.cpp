// SPDX-License-Identifier: Apache-2.0
#include "lazyk/enumerator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lazyk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LazyEnumerator::LazyEnumerator(const ProbTable& table) : table_(table) {}

// Incrementable positions sorted by the cost of bumping their rank by one
// (ascending), ties by descending position. Computed once per state.
const std::vector<std::int32_t>& LazyEnumerator::edit_order(
    const RankVector& state) {
  auto it = edit_cache_.find(state);
  if (it != edit_cache_.end()) return it->second;

  const auto l = static_cast<std::int32_t>(table_.num_labels());
  std::vector<std::int32_t> positions;
  std::vector<double> deltas(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] + 1 >= l) continue;
    const double cur = table_.logp_at_rank(i, state[i]);
    const double nxt = table_.logp_at_rank(i, state[i] + 1);
    deltas[i] = std::isinf(nxt) ? kInf : cur - nxt;
    positions.push_back(static_cast<std::int32_t>(i));
  }
  std::sort(positions.begin(), positions.end(),
            [&deltas](std::int32_t a, std::int32_t b) {
              if (deltas[a] != deltas[b]) return deltas[a] < deltas[b];
              return a > b;
            });
  return edit_cache_.emplace(state, std::move(positions)).first->second;
}

std::optional<RankVector> LazyEnumerator::next_best(const RankVector& state) {
  auto it = frontier_.find(state);
  if (it == frontier_.end())
    throw std::invalid_argument("next_best: state not in frontier");
  const auto& order = edit_order(state);
  const std::int32_t counter = it->second;
  if (counter >= static_cast<std::int32_t>(order.size())) return std::nullopt;
  RankVector child = state;
  ++child[static_cast<std::size_t>(order[static_cast<std::size_t>(counter)])];
  return child;
}

void LazyEnumerator::add_next_best(const RankVector& state) {
  auto child = next_best(state);
  while (child && frontier_.contains(*child)) {
    ++frontier_[state];
    child = next_best(state);
  }
  if (child) {
    frontier_.emplace(*child, 0);
    heap_push({state, seq_cost(table_, *child), push_count_++});
  } else {
    edit_cache_.erase(state);  // retired, no children left
  }
}

void LazyEnumerator::register_state(const RankVector& state) {
  frontier_.emplace(state, 0);
}

std::optional<LabelSeq> LazyEnumerator::next() {
  if (!started_) {
    started_ = true;
    RankVector start(table_.n(), 0);
    frontier_.emplace(start, 0);
    pending_parent_ = std::move(start);
    ++yielded_;
    return make_seq(table_, RankVector(table_.n(), 0));
  }

  // The previous sequence did not satisfy the caller; extend the frontier
  // around it before popping.
  if (pending_child_) add_next_best(*std::exchange(pending_child_, {}));
  if (pending_parent_) add_next_best(*std::exchange(pending_parent_, {}));

  if (heap_.empty()) return std::nullopt;
  HeapEntry top = heap_pop();
  auto child = next_best(top.state);
  if (!child)
    throw std::logic_error("LazyEnumerator: heap entry without a child");
  LabelSeq seq = make_seq(table_, *child);
  pending_child_ = std::move(*child);
  pending_parent_ = std::move(top.state);
  ++yielded_;
  return seq;
}

void LazyEnumerator::heap_push(HeapEntry e) {
  heap_.push_back(std::move(e));
  std::size_t i = heap_.size() - 1;
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    auto& p = heap_[parent];
    auto& c = heap_[i];
    if (p.priority < c.priority ||
        (p.priority == c.priority && p.sequence < c.sequence))
      break;
    std::swap(p, c);
    i = parent;
  }
}

LazyEnumerator::HeapEntry LazyEnumerator::heap_pop() {
  HeapEntry top = std::move(heap_.front());
  if (heap_.size() > 1) heap_.front() = std::move(heap_.back());
  heap_.pop_back();
  std::size_t i = 0;
  const std::size_t size = heap_.size();
  auto before = [this](std::size_t a, std::size_t b) {
    return heap_[a].priority < heap_[b].priority ||
           (heap_[a].priority == heap_[b].priority &&
            heap_[a].sequence < heap_[b].sequence);
  };
  while (true) {
    std::size_t smallest = i;
    const std::size_t lc = 2 * i + 1, rc = 2 * i + 2;
    if (lc < size && before(lc, smallest)) smallest = lc;
    if (rc < size && before(rc, smallest)) smallest = rc;
    if (smallest == i) break;
    std::swap(heap_[i], heap_[smallest]);
    i = smallest;
  }
  return top;
}

}  // namespace lazyk
