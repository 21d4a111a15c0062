#pragma once

#include <cstdint>
#include <vector>

#include "rsm/alias_sampler.hpp"
#include "rsm/corpus.hpp"
#include "rsm/model.hpp"
#include "rsm/rng.hpp"
#include "rsm/train_stats.hpp"

namespace rsm {

/// One data document bound to k noise documents that share a retained
/// sub-multiset V_r of the data tokens. Residual log-probabilities cache
/// the sum of ln(unigram) over each member's non-retained tokens, the
/// empirical half of the noise density.
struct NoiseBundle {
  BowDocument data;
  BowDocument retained;
  std::vector<BowDocument> noise;         // k docs, each = retained + resampled rest
  double data_residual_logp = 0.0;        // over data tokens outside retained
  std::vector<double> noise_residual_logp;  // over each noise doc's resampled tokens
};

enum class Weighting { count, idf };

struct NceConfig {
  int k = 5;             // noise docs per data doc
  double alpha = 0.5;    // retained fraction, in [0,1)
  double learning_rate = 0.1;
  int batch_size = 128;
  int epochs = 1;
  int hidden = 128;
  std::uint64_t seed = 0;
  Weighting weighting = Weighting::count;
  bool cache_noise = false;
  unsigned threads = 1;
};

/// Partial noise sampling. Retains ceil(alpha * D) tokens drawn uniformly
/// without replacement from the document's token multiset, then fills each
/// of the k noise docs back to length D with iid draws from the unigram
/// alias table. When idf weights are given, sampling still happens in
/// count space and the weights are applied to the finished bundle
/// (documents, lengths, residuals).
NoiseBundle pns_generate(const BowDocument& doc, const AliasTable& noise_table,
                         int k, double alpha, Rng& rng,
                         const Eigen::VectorXd* idf = nullptr);

/// Log-density of a bundle member under the partial-noise distribution:
/// log P_theta(V_r) + residual, with log P_theta(V_r) = -F(V_r) - log Z_{D_r}^c.
/// member < 0 selects the data doc, otherwise noise doc `member`.
double noise_log_prob(const NoiseBundle& bundle, int member,
                      const RsmParams& params, const FrozenPartition& frozen);

/// Length-normalized log-ratio X = (log P_theta(member) - log P_n(member)) / D.
/// The division by D keeps documents of different lengths on one scale.
double uce_log_ratio(const NoiseBundle& bundle, int member,
                     const RsmParams& params, const FrozenPartition& frozen);

/// J = mean over data members of softplus(ln k - X) plus the matching sum
/// over all noise members of softplus(X - ln k), averaged per bundle.
/// The frozen partition snapshot is an explicit argument so that J and
/// nce_gradient see the same constant Z^c.
double nce_objective(const std::vector<NoiseBundle>& bundles, const RsmParams& params,
                     const FrozenPartition& frozen, int k);

/// Ascent direction -dJ/dtheta. The gradient flows through each member's
/// free energy and through F(V_r) inside the noise density; the frozen
/// Z^c contributes nothing.
FreeEnergyGradient nce_gradient(const std::vector<NoiseBundle>& bundles,
                                const RsmParams& params,
                                const FrozenPartition& frozen, int k);

struct NceBatchStats {
  double objective = 0.0;
  long long correct = 0;   // members on the right side of the ln k threshold
  long long members = 0;   // (1+k) * batch size
  double wall_seconds = 0.0;
};

/// One SGD step: freeze Z^c from the current b, evaluate J and its
/// gradient over the bundles, apply params += lr * (-dJ).
NceBatchStats nce_minibatch_update(RsmParams& params,
                                   const std::vector<const NoiseBundle*>& bundles,
                                   const NceConfig& config);

/// SGD over shuffled minibatches with per-epoch noise regeneration
/// (cache_noise freezes the epoch-1 bundles). idf weighting needs the
/// per-term weights; count mode ignores them. Deterministic given the
/// seed. Per-epoch stats: J, member classification rate, wall seconds.
TrainResult train_nce(const Corpus& corpus, const NceConfig& config,
                      const Eigen::VectorXd* idf = nullptr);

}  // namespace rsm
