#include "rsm/alias_sampler.hpp"

#include <stdexcept>
#include <string>

namespace rsm {

AliasTable build_alias(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::runtime_error("alias table needs at least one weight");

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(weights[k] >= 0.0)) {
      throw std::runtime_error("alias weight " + std::to_string(k) +
                               " is negative or not a number");
    }
    total += weights[k];
  }
  if (!(total > 0.0)) throw std::runtime_error("alias weights sum to zero");

  AliasTable table;
  table.source.resize(n);
  table.prob.assign(n, 0.0);
  table.alias.assign(n, 0);

  // Scaled so a cell with mass exactly 1 fills itself.
  std::vector<double> scaled(n);
  for (std::size_t k = 0; k < n; ++k) {
    table.source[k] = weights[k] / total;
    scaled[k] = table.source[k] * static_cast<double>(n);
  }

  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    (scaled[k] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(k));
  }

  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    const std::uint32_t l = large.back();
    small.pop_back();
    large.pop_back();
    table.prob[s] = scaled[s];
    table.alias[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Leftovers hold mass 1 up to rounding; they always accept.
  for (const std::uint32_t k : large) table.prob[k] = 1.0;
  for (const std::uint32_t k : small) table.prob[k] = 1.0;

  return table;
}

void sample_many(const AliasTable& table, std::size_t n, Rng& rng,
                 std::vector<std::uint32_t>& out) {
  out.reserve(out.size() + n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(table, rng));
}

}  // namespace rsm
