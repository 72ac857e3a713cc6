// SPDX-License-Identifier: Apache-2.0
#include "lazyk/prob_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lazyk {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ProbTable ProbTable::from_log(const std::vector<std::vector<double>>& logp) {
  if (logp.empty()) throw std::invalid_argument("ProbTable: empty matrix");
  const std::size_t n = logp.size();
  const std::size_t l = logp.front().size();
  if (l == 0) throw std::invalid_argument("ProbTable: empty rows");

  ProbTable t;
  t.n_ = n;
  t.l_ = l;
  t.logp_.resize(n * l);
  t.rank_order_.resize(n * l);
  t.label_rank_.resize(n * l);

  for (std::size_t i = 0; i < n; ++i) {
    if (logp[i].size() != l)
      throw std::invalid_argument("ProbTable: ragged matrix at row " +
                                  std::to_string(i));
    bool any_finite = false;
    for (std::size_t j = 0; j < l; ++j) {
      const double v = logp[i][j];
      if (std::isnan(v))
        throw std::invalid_argument("ProbTable: NaN at row " +
                                    std::to_string(i));
      if (v == std::numeric_limits<double>::infinity())
        throw std::invalid_argument("ProbTable: +inf at row " +
                                    std::to_string(i));
      any_finite |= std::isfinite(v);
      t.logp_[i * l + j] = v;
    }
    if (!any_finite)
      throw std::invalid_argument("ProbTable: row " + std::to_string(i) +
                                  " has no finite entry");

    auto* order = t.rank_order_.data() + i * l;
    std::iota(order, order + l, 0);
    const double* row = t.logp_.data() + i * l;
    std::stable_sort(order, order + l, [row](std::int32_t a, std::int32_t b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return a < b;  // ties: ascending label index
    });
    for (std::size_t r = 0; r < l; ++r)
      t.label_rank_[i * l + static_cast<std::size_t>(order[r])] =
          static_cast<std::int32_t>(r);
  }
  return t;
}

ProbTable ProbTable::from_raw(const std::vector<std::vector<double>>& probs) {
  std::vector<std::vector<double>> lp(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    lp[i].resize(probs[i].size());
    for (std::size_t j = 0; j < probs[i].size(); ++j) {
      const double p = probs[i][j];
      if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw std::invalid_argument(
            "ProbTable: raw probability outside [0,1] at row " +
            std::to_string(i));
      lp[i][j] = p == 0.0 ? kNegInf : std::log(p);
    }
  }
  return from_log(lp);
}

}  // namespace lazyk
