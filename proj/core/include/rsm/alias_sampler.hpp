#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsm/rng.hpp"

namespace rsm {

/// Walker alias table built with Vose's two-list construction.
/// Invariant: for every k, prob[k]/K plus the overflow mass routed to k by
/// other cells ((1 - prob[j])/K for each j with alias[j] == k) equals
/// source[k].
struct AliasTable {
  std::vector<double> prob;    // acceptance threshold per cell, in [0, 1]
  std::vector<double> source;  // normalized input distribution
  std::vector<std::uint32_t> alias;

  std::size_t size() const { return prob.size(); }
};

/// Normalizes weights (they need not sum to one) and builds the table in
/// O(K). Weights must be non-negative with positive total.
AliasTable build_alias(std::span<const double> weights);

/// One categorical draw: a uniform cell, a uniform real, one comparison.
inline std::uint32_t sample(const AliasTable& table, Rng& rng) {
  const auto cell = static_cast<std::uint32_t>(rng.next_below(table.prob.size()));
  return rng.next_double() < table.prob[cell] ? cell : table.alias[cell];
}

/// Appends n draws to out.
void sample_many(const AliasTable& table, std::size_t n, Rng& rng,
                 std::vector<std::uint32_t>& out);

}  // namespace rsm
