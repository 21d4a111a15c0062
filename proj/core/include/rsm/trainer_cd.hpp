#pragma once

#include <cstdint>
#include <vector>

#include "rsm/corpus.hpp"
#include "rsm/model.hpp"
#include "rsm/rng.hpp"
#include "rsm/train_stats.hpp"

namespace rsm {

/// One Gibbs chain: current visible counts plus the last hidden sample.
/// The document length is preserved by every step.
struct GibbsState {
  BowDocument doc;
  Eigen::VectorXd h;  // entries in {0,1}
};

struct CdConfig {
  int gibbs_steps = 1;
  bool persistent = false;
  double learning_rate = 0.1;
  int batch_size = 128;
  int epochs = 1;
  int hidden = 128;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct CdBatchStats {
  double mean_free_energy = 0.0;
  double wall_seconds = 0.0;
};

/// h ~ Bernoulli(P(h|V)), then V' = D iid draws from P(v|h). The visible
/// draw deliberately rescans the softmax per token: the distribution
/// depends on h and changes every step, so no alias table applies. This
/// is the cost the timing benchmark exposes.
GibbsState gibbs_step(const RsmParams& params, const GibbsState& state, Rng& rng);

/// params += lr * mean over batch of [-grad F(data) + grad F(sample)],
/// where the sample is the chain state after gibbs_steps sweeps starting
/// from the data doc, or from chains[i] when persistent chains are given.
CdBatchStats cd_minibatch_update(RsmParams& params,
                                 const std::vector<const BowDocument*>& batch,
                                 const CdConfig& config, Rng& rng,
                                 std::vector<GibbsState>* chains = nullptr);

/// Full SGD loop over shuffled minibatches. Deterministic given the seed.
/// Rejects idf-weighted corpora: fractional counts cannot be resampled.
TrainResult train_cd(const Corpus& corpus, const CdConfig& config);

}  // namespace rsm
