#include "rsm/trainer_nce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "rsm/math.hpp"
#include "rsm/threading.hpp"

namespace rsm {

namespace {

BowDocument counts_from_tokens(std::vector<int> tokens) {
  std::sort(tokens.begin(), tokens.end());
  BowDocument doc;
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t j = i;
    while (j < tokens.size() && tokens[j] == tokens[i]) ++j;
    doc.entries.push_back({tokens[i], static_cast<double>(j - i)});
    i = j;
  }
  return doc;
}

void validate(const NceConfig& config) {
  if (config.k < 1) throw std::runtime_error("noise ratio k must be >= 1");
  if (!(config.alpha >= 0.0 && config.alpha < 1.0)) {
    throw std::runtime_error("alpha must lie in [0, 1)");
  }
  if (config.batch_size < 1) throw std::runtime_error("batch_size must be >= 1");
  if (config.epochs < 0) throw std::runtime_error("epochs must be >= 0");
  if (config.hidden < 1) throw std::runtime_error("hidden must be >= 1");
  if (config.learning_rate < 0.0) throw std::runtime_error("learning_rate must be >= 0");
}

struct BatchEval {
  double objective_sum = 0.0;  // sum over bundles of the (1+k) softplus terms
  long long correct = 0;
  long long members = 0;
  FreeEnergyGradient grad;
};

/// Shared forward/backward pass. Gradient coefficients follow
/// dX/dtheta = [-grad F(member) + grad F(V_r)] / D with Z^c frozen.
BatchEval evaluate_bundles(const std::vector<const NoiseBundle*>& bundles,
                           const RsmParams& params, const FrozenPartition& frozen,
                           int k, bool with_grad, unsigned threads) {
  if (bundles.empty()) throw std::runtime_error("bundle batch is empty");
  const double log_k = std::log(static_cast<double>(k));
  const unsigned workers = threads == 0 ? default_thread_count() : threads;

  std::vector<BatchEval> partial(workers);
  if (with_grad) {
    for (auto& p : partial) p.grad = FreeEnergyGradient::zero(params.hidden(), params.vocab());
  }

  parallel_for(0, bundles.size(), workers,
               [&](unsigned w, std::size_t lo, std::size_t hi) {
    BatchEval& out = partial[w];
    for (std::size_t i = lo; i < hi; ++i) {
      const NoiseBundle& bundle = *bundles[i];
      const double log_p_retained =
          -free_energy(params, bundle.retained) - frozen.log_z(bundle.retained.size());

      const double len_data = bundle.data.size();
      if (len_data <= 0.0) throw std::runtime_error("bundle has a zero-length data doc");
      const double x_data = (-free_energy(params, bundle.data) - frozen.log_z(len_data) -
                             (log_p_retained + bundle.data_residual_logp)) /
                            len_data;
      out.objective_sum += softplus(log_k - x_data);
      if (x_data > log_k) ++out.correct;
      ++out.members;

      const double c_data = sigmoid(log_k - x_data) / len_data;
      double retained_coeff = -c_data;
      if (with_grad) accumulate_neg_free_energy_gradient(out.grad, params, bundle.data, c_data);

      for (std::size_t j = 0; j < bundle.noise.size(); ++j) {
        const double len = bundle.noise[j].size();
        if (len <= 0.0) throw std::runtime_error("bundle has a zero-length noise doc");
        const double x = (-free_energy(params, bundle.noise[j]) - frozen.log_z(len) -
                          (log_p_retained + bundle.noise_residual_logp[j])) /
                         len;
        out.objective_sum += softplus(x - log_k);
        if (x < log_k) ++out.correct;
        ++out.members;

        const double c_noise = -sigmoid(x - log_k) / len;
        retained_coeff -= c_noise;
        if (with_grad) {
          accumulate_neg_free_energy_gradient(out.grad, params, bundle.noise[j], c_noise);
        }
      }
      if (with_grad) {
        accumulate_neg_free_energy_gradient(out.grad, params, bundle.retained, retained_coeff);
      }
    }
  });

  BatchEval total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    total.objective_sum += partial[w].objective_sum;
    total.correct += partial[w].correct;
    total.members += partial[w].members;
    if (with_grad) total.grad.add_scaled(partial[w].grad, 1.0);
  }
  if (!std::isfinite(total.objective_sum)) {
    throw std::runtime_error("parameter blow-up: objective is not finite");
  }
  return total;
}

std::vector<const NoiseBundle*> as_pointers(const std::vector<NoiseBundle>& bundles) {
  std::vector<const NoiseBundle*> ptrs;
  ptrs.reserve(bundles.size());
  for (const auto& b : bundles) ptrs.push_back(&b);
  return ptrs;
}

}  // namespace

NoiseBundle pns_generate(const BowDocument& doc, const AliasTable& noise_table,
                         int k, double alpha, Rng& rng, const Eigen::VectorXd* idf) {
  if (doc.entries.empty()) {
    throw std::runtime_error("cannot generate noise for an empty document");
  }
  if (k < 1) throw std::runtime_error("noise ratio k must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::runtime_error("alpha must lie in [0, 1)");

  std::vector<int> tokens;
  tokens.reserve(static_cast<std::size_t>(doc.size()) + 1);
  for (const auto& e : doc.entries) {
    const auto count = static_cast<long long>(std::llround(e.value));
    if (count <= 0 || std::abs(e.value - static_cast<double>(count)) > 1e-9) {
      throw std::runtime_error("partial noise sampling needs integer token counts");
    }
    tokens.insert(tokens.end(), static_cast<std::size_t>(count), e.term);
  }
  const auto total = static_cast<long long>(tokens.size());
  // Epsilon guards against ceil(0.3 * 10) landing on 4.
  auto retained_count =
      static_cast<long long>(std::ceil(alpha * static_cast<double>(total) - 1e-9));
  retained_count = std::clamp<long long>(retained_count, 0, total);

  // Partial Fisher-Yates: the first retained_count slots become a uniform
  // draw without replacement; the rest are the data residual.
  for (long long i = 0; i < retained_count; ++i) {
    const auto j = i + static_cast<long long>(
                           rng.next_below(static_cast<std::uint64_t>(total - i)));
    std::swap(tokens[static_cast<std::size_t>(i)], tokens[static_cast<std::size_t>(j)]);
  }

  const auto weight_of = [&](int term) { return idf ? (*idf)[term] : 1.0; };
  const auto log_noise = [&](int term) { return std::log(noise_table.source[term]); };

  NoiseBundle bundle;
  bundle.data = doc;
  bundle.retained = counts_from_tokens(
      std::vector<int>(tokens.begin(), tokens.begin() + retained_count));
  bundle.data_residual_logp = 0.0;
  for (long long i = retained_count; i < total; ++i) {
    const int term = tokens[static_cast<std::size_t>(i)];
    bundle.data_residual_logp += weight_of(term) * log_noise(term);
  }

  bundle.noise.reserve(static_cast<std::size_t>(k));
  bundle.noise_residual_logp.reserve(static_cast<std::size_t>(k));
  std::vector<int> noise_tokens;
  for (int j = 0; j < k; ++j) {
    noise_tokens.assign(tokens.begin(), tokens.begin() + retained_count);
    double residual = 0.0;
    for (long long t = retained_count; t < total; ++t) {
      const int term = static_cast<int>(sample(noise_table, rng));
      noise_tokens.push_back(term);
      residual += weight_of(term) * log_noise(term);
    }
    bundle.noise.push_back(counts_from_tokens(noise_tokens));
    bundle.noise_residual_logp.push_back(residual);
  }

  if (idf) {
    apply_idf(bundle.data, *idf);
    apply_idf(bundle.retained, *idf);
    for (auto& nd : bundle.noise) apply_idf(nd, *idf);
  }
  return bundle;
}

double noise_log_prob(const NoiseBundle& bundle, int member,
                      const RsmParams& params, const FrozenPartition& frozen) {
  const double log_p_retained =
      -free_energy(params, bundle.retained) - frozen.log_z(bundle.retained.size());
  if (member < 0) return log_p_retained + bundle.data_residual_logp;
  return log_p_retained +
         bundle.noise_residual_logp.at(static_cast<std::size_t>(member));
}

double uce_log_ratio(const NoiseBundle& bundle, int member,
                     const RsmParams& params, const FrozenPartition& frozen) {
  const BowDocument& doc =
      member < 0 ? bundle.data : bundle.noise.at(static_cast<std::size_t>(member));
  const double length = doc.size();
  if (length <= 0.0) throw std::runtime_error("log-ratio of a zero-length document");
  const double log_p_model = -free_energy(params, doc) - frozen.log_z(length);
  return (log_p_model - noise_log_prob(bundle, member, params, frozen)) / length;
}

double nce_objective(const std::vector<NoiseBundle>& bundles, const RsmParams& params,
                     const FrozenPartition& frozen, int k) {
  const auto eval = evaluate_bundles(as_pointers(bundles), params, frozen, k, false, 1);
  return eval.objective_sum / static_cast<double>(bundles.size());
}

FreeEnergyGradient nce_gradient(const std::vector<NoiseBundle>& bundles,
                                const RsmParams& params,
                                const FrozenPartition& frozen, int k) {
  auto eval = evaluate_bundles(as_pointers(bundles), params, frozen, k, true, 1);
  const double inv = 1.0 / static_cast<double>(bundles.size());
  eval.grad.dW *= inv;
  eval.grad.db *= inv;
  eval.grad.da *= inv;
  return std::move(eval.grad);
}

NceBatchStats nce_minibatch_update(RsmParams& params,
                                   const std::vector<const NoiseBundle*>& bundles,
                                   const NceConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const FrozenPartition frozen = freeze_partition(params);
  const BatchEval eval =
      evaluate_bundles(bundles, params, frozen, config.k, true, config.threads);
  const double scale =
      config.learning_rate / static_cast<double>(bundles.size());
  params.W += scale * eval.grad.dW;
  params.b += scale * eval.grad.db;
  params.a += scale * eval.grad.da;

  NceBatchStats stats;
  stats.objective = eval.objective_sum / static_cast<double>(bundles.size());
  stats.correct = eval.correct;
  stats.members = eval.members;
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

TrainResult train_nce(const Corpus& corpus, const NceConfig& config,
                      const Eigen::VectorXd* idf) {
  validate(config);
  if (corpus.docs.empty()) throw std::runtime_error("training corpus is empty");
  if (corpus.transforms.idf) {
    throw std::runtime_error(
        "corpus must stay in count space for noise sampling; "
        "request idf weighting through the trainer configuration");
  }
  if (config.weighting == Weighting::idf && idf == nullptr) {
    throw std::runtime_error("idf weighting requested but no term weights supplied");
  }
  const Eigen::VectorXd* weights = config.weighting == Weighting::idf ? idf : nullptr;

  const Eigen::VectorXd unigram = empirical_distribution(corpus);
  const AliasTable table = build_alias(
      std::span<const double>(unigram.data(), static_cast<std::size_t>(unigram.size())));

  Rng init_rng(derive_seed(config.seed, 0x1717));
  TrainResult result;
  result.params =
      init_params(corpus.vocab_size, config.hidden, unigram, init_rng);

  const std::size_t n = corpus.num_docs();
  const unsigned workers =
      config.threads == 0 ? default_thread_count() : config.threads;

  // Bundle i is a pure function of (seed, tag, i); caching pins tag to 1,
  // which matches what a first streamed epoch would generate.
  const auto generate = [&](std::size_t doc_idx, std::uint64_t tag) {
    Rng rng(derive_seed(config.seed, 0xB0B, tag, doc_idx));
    return pns_generate(corpus.docs[doc_idx], table, config.k, config.alpha, rng, weights);
  };

  std::vector<NoiseBundle> cache;
  if (config.cache_noise && config.epochs > 0) {
    cache.resize(n);
    parallel_for(0, n, workers, [&](unsigned, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) cache[i] = generate(i, 1);
    });
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    Rng shuffle_rng(derive_seed(config.seed, 0x5FFE, static_cast<std::uint64_t>(epoch)));
    shuffle(order, shuffle_rng);

    double objective_sum = 0.0;
    long long correct = 0;
    long long members = 0;
    for (std::size_t lo = 0; lo < n; lo += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t hi = std::min(n, lo + static_cast<std::size_t>(config.batch_size));
      std::vector<NoiseBundle> fresh;
      std::vector<const NoiseBundle*> batch;
      batch.reserve(hi - lo);
      if (config.cache_noise) {
        for (std::size_t i = lo; i < hi; ++i) batch.push_back(&cache[order[i]]);
      } else {
        fresh.resize(hi - lo);
        parallel_for(lo, hi, workers, [&](unsigned, std::size_t a, std::size_t b) {
          for (std::size_t i = a; i < b; ++i) {
            fresh[i - lo] = generate(order[i], static_cast<std::uint64_t>(epoch));
          }
        });
        for (const auto& bundle : fresh) batch.push_back(&bundle);
      }

      const NceBatchStats stats = nce_minibatch_update(result.params, batch, config);
      objective_sum += stats.objective * static_cast<double>(batch.size());
      correct += stats.correct;
      members += stats.members;
    }

    EpochStats es;
    es.epoch = epoch;
    es.objective = objective_sum / static_cast<double>(n);
    es.proxy_accuracy =
        members > 0 ? static_cast<double>(correct) / static_cast<double>(members) : -1.0;
    es.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start)
            .count();
    result.epochs.push_back(es);
  }
  return result;
}

}  // namespace rsm
