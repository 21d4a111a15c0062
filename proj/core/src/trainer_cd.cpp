#include "rsm/trainer_cd.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "rsm/math.hpp"
#include "rsm/threading.hpp"

namespace rsm {

namespace {

/// D iid categorical draws, each by a fresh linear scan of the softmax.
BowDocument draw_visible(const Eigen::VectorXd& probs, long long length, Rng& rng) {
  const int vocab = static_cast<int>(probs.size());
  std::vector<int> drawn;
  drawn.reserve(static_cast<std::size_t>(length));
  for (long long t = 0; t < length; ++t) {
    const double u = rng.next_double();
    double acc = 0.0;
    int pick = vocab - 1;
    for (int k = 0; k < vocab; ++k) {
      acc += probs[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    drawn.push_back(pick);
  }
  std::sort(drawn.begin(), drawn.end());
  BowDocument doc;
  for (std::size_t i = 0; i < drawn.size();) {
    std::size_t j = i;
    while (j < drawn.size() && drawn[j] == drawn[i]) ++j;
    doc.entries.push_back({drawn[i], static_cast<double>(j - i)});
    i = j;
  }
  return doc;
}

void validate(const CdConfig& config) {
  if (config.gibbs_steps < 1) throw std::runtime_error("gibbs_steps must be >= 1");
  if (config.batch_size < 1) throw std::runtime_error("batch_size must be >= 1");
  if (config.epochs < 0) throw std::runtime_error("epochs must be >= 0");
  if (config.hidden < 1) throw std::runtime_error("hidden must be >= 1");
  if (config.learning_rate < 0.0) throw std::runtime_error("learning_rate must be >= 0");
}

}  // namespace

GibbsState gibbs_step(const RsmParams& params, const GibbsState& state, Rng& rng) {
  const HiddenPosterior post = hidden_posterior(params, state.doc);
  GibbsState next;
  next.h.resize(post.probs.size());
  for (int j = 0; j < next.h.size(); ++j) {
    next.h[j] = rng.next_bernoulli(post.probs[j]) ? 1.0 : 0.0;
  }
  const auto length = static_cast<long long>(std::llround(state.doc.size()));
  next.doc = draw_visible(visible_softmax(params, next.h), length, rng);
  return next;
}

CdBatchStats cd_minibatch_update(RsmParams& params,
                                 const std::vector<const BowDocument*>& batch,
                                 const CdConfig& config, Rng& rng,
                                 std::vector<GibbsState>* chains) {
  if (batch.empty()) throw std::runtime_error("minibatch is empty");
  if (chains && chains->size() < batch.size()) {
    throw std::runtime_error("persistent chain count is smaller than the minibatch");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = batch.size();

  // Seeds drawn up front so workers never share the caller's stream.
  std::vector<std::uint64_t> seeds(n);
  for (auto& s : seeds) s = rng.next_u64();

  const unsigned workers =
      config.threads == 0 ? default_thread_count() : config.threads;
  std::vector<FreeEnergyGradient> acc(
      workers, FreeEnergyGradient::zero(params.hidden(), params.vocab()));
  std::vector<double> free_energy_sum(workers, 0.0);

  parallel_for(0, n, workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Rng doc_rng(seeds[i]);
      GibbsState state;
      if (chains) {
        state = (*chains)[i];
      } else {
        state.doc = *batch[i];
      }
      for (int step = 0; step < config.gibbs_steps; ++step) {
        state = gibbs_step(params, state, doc_rng);
      }
      accumulate_neg_free_energy_gradient(acc[w], params, *batch[i], 1.0);
      accumulate_neg_free_energy_gradient(acc[w], params, state.doc, -1.0);
      free_energy_sum[w] += free_energy(params, *batch[i]);
      if (chains) (*chains)[i] = std::move(state);
    }
  });

  for (unsigned w = 1; w < workers; ++w) {
    acc[0].add_scaled(acc[w], 1.0);
    free_energy_sum[0] += free_energy_sum[w];
  }

  const double scale = config.learning_rate / static_cast<double>(n);
  params.W += scale * acc[0].dW;
  params.b += scale * acc[0].db;
  params.a += scale * acc[0].da;

  CdBatchStats stats;
  stats.mean_free_energy = free_energy_sum[0] / static_cast<double>(n);
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

TrainResult train_cd(const Corpus& corpus, const CdConfig& config) {
  validate(config);
  if (corpus.docs.empty()) throw std::runtime_error("training corpus is empty");
  if (corpus.transforms.idf) {
    throw std::runtime_error(
        "contrastive divergence requires integer counts; "
        "idf-weighted corpora are not supported");
  }

  Rng init_rng(derive_seed(config.seed, 0x1717));
  TrainResult result;
  result.params = init_params(corpus.vocab_size, config.hidden,
                              empirical_distribution(corpus), init_rng);

  const std::size_t n = corpus.num_docs();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<GibbsState> chains;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    Rng shuffle_rng(derive_seed(config.seed, 0x5FFE, static_cast<std::uint64_t>(epoch)));
    shuffle(order, shuffle_rng);

    double free_energy_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t lo = 0; lo < n; lo += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t hi = std::min(n, lo + static_cast<std::size_t>(config.batch_size));
      std::vector<const BowDocument*> batch;
      batch.reserve(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) batch.push_back(&corpus.docs[order[i]]);

      if (config.persistent && chains.empty()) {
        chains.reserve(batch.size());
        for (const BowDocument* doc : batch) chains.push_back(GibbsState{*doc, {}});
      }

      Rng batch_rng(derive_seed(config.seed, static_cast<std::uint64_t>(epoch),
                                static_cast<std::uint64_t>(batch_index)));
      const CdBatchStats stats =
          cd_minibatch_update(result.params, batch, config, batch_rng,
                              config.persistent ? &chains : nullptr);
      free_energy_sum += stats.mean_free_energy * static_cast<double>(batch.size());
      ++batch_index;
    }

    EpochStats es;
    es.epoch = epoch;
    es.objective = free_energy_sum / static_cast<double>(n);
    es.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start)
            .count();
    result.epochs.push_back(es);
  }
  return result;
}

}  // namespace rsm
