#include "rsm/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rsm/math.hpp"

namespace rsm {

namespace {

struct BatchCycler {
  const Corpus& corpus;
  std::size_t next = 0;

  std::vector<const BowDocument*> take(int batch_size) {
    std::vector<const BowDocument*> batch;
    batch.reserve(static_cast<std::size_t>(batch_size));
    for (int i = 0; i < batch_size; ++i) {
      batch.push_back(&corpus.docs[next]);
      next = (next + 1) % corpus.num_docs();
    }
    return batch;
  }
};

void summarize(TimingRecord& record, const std::vector<double>& samples) {
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(samples.size());
  record.mean_seconds = mean;
  record.std_seconds = std::sqrt(var);
  record.batches = static_cast<int>(samples.size());
}

}  // namespace

TimingRecord time_cd_minibatches(const Corpus& corpus, const CdConfig& config,
                                 int warmup, int timed) {
  if (timed < 1) throw std::runtime_error("need at least one timed batch");
  Rng init_rng(derive_seed(config.seed, 0x1717));
  RsmParams params =
      init_params(corpus.vocab_size, config.hidden, empirical_distribution(corpus), init_rng);

  BatchCycler cycler{corpus};
  Rng rng(derive_seed(config.seed, 0xBE4C));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(timed));
  for (int i = 0; i < warmup + timed; ++i) {
    const auto batch = cycler.take(config.batch_size);
    const CdBatchStats stats = cd_minibatch_update(params, batch, config, rng);
    if (i >= warmup) samples.push_back(stats.wall_seconds);
  }

  TimingRecord record;
  record.trainer = config.persistent ? "pcd" : "cd";
  record.vocab_size = corpus.vocab_size;
  record.param = config.gibbs_steps;
  summarize(record, samples);
  return record;
}

TimingRecord time_nce_minibatches(const Corpus& corpus, const NceConfig& config,
                                  int warmup, int timed) {
  if (timed < 1) throw std::runtime_error("need at least one timed batch");
  const Eigen::VectorXd unigram = empirical_distribution(corpus);
  const AliasTable table = build_alias(
      std::span<const double>(unigram.data(), static_cast<std::size_t>(unigram.size())));
  Rng init_rng(derive_seed(config.seed, 0x1717));
  RsmParams params = init_params(corpus.vocab_size, config.hidden, unigram, init_rng);

  BatchCycler cycler{corpus};
  Rng rng(derive_seed(config.seed, 0xBE4C));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(timed));
  std::vector<NoiseBundle> bundles;
  std::vector<const NoiseBundle*> ptrs;
  for (int i = 0; i < warmup + timed; ++i) {
    const auto batch = cycler.take(config.batch_size);
    const auto start = std::chrono::steady_clock::now();
    bundles.clear();
    bundles.reserve(batch.size());
    for (const BowDocument* doc : batch) {
      bundles.push_back(pns_generate(*doc, table, config.k, config.alpha, rng));
    }
    ptrs.clear();
    for (const auto& b : bundles) ptrs.push_back(&b);
    nce_minibatch_update(params, ptrs, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (i >= warmup) samples.push_back(seconds);
  }

  TimingRecord record;
  record.trainer = "nce";
  record.vocab_size = corpus.vocab_size;
  record.param = config.k;
  summarize(record, samples);
  return record;
}

void save_timing_csv(const std::vector<TimingRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "trainer,vocab_size,param,mean_seconds,std_seconds,batches\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.9f,%.9f,%d\n", r.trainer.c_str(),
                  r.vocab_size, r.param, r.mean_seconds, r.std_seconds, r.batches);
    out << buf;
  }
}

}  // namespace rsm
