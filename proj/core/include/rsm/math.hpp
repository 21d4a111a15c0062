#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>

namespace rsm {

/// log(1 + e^x) without overflow for large |x|.
inline double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) {
    const double z = std::exp(-x);
    return 1.0 / (1.0 + z);
  }
  const double z = std::exp(x);
  return z / (1.0 + z);
}

inline double logsumexp(std::span<const double> xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

inline double logsumexp(const Eigen::VectorXd& xs) {
  return logsumexp(std::span<const double>(xs.data(), static_cast<size_t>(xs.size())));
}

/// In-place softmax of a logit vector.
inline void softmax_inplace(Eigen::VectorXd& logits) {
  const double mx = logits.maxCoeff();
  logits = (logits.array() - mx).exp();
  logits /= logits.sum();
}

/// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
template <typename Vec, typename RngT>
void shuffle(Vec& items, RngT& rng) {
  const std::size_t n = items.size();
  if (n < 2) return;
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(items[i], items[j]);
  }
}

}  // namespace rsm
