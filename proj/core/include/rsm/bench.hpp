#pragma once

#include <string>
#include <vector>

#include "rsm/corpus.hpp"
#include "rsm/trainer_cd.hpp"
#include "rsm/trainer_nce.hpp"

namespace rsm {

struct TimingRecord {
  std::string trainer;  // "cd", "pcd", or "nce"
  int vocab_size = 0;
  int param = 0;  // gibbs steps for CD, noise ratio k for NCE
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  int batches = 0;
};

/// Times full minibatch updates on a monotonic clock, cycling through the
/// corpus in fixed order. Warmup batches run first and are discarded. For
/// NCE the measured time includes per-batch noise generation; the unigram
/// alias table is corpus-level setup and excluded, as is initialization.
TimingRecord time_cd_minibatches(const Corpus& corpus, const CdConfig& config,
                                 int warmup, int timed);
TimingRecord time_nce_minibatches(const Corpus& corpus, const NceConfig& config,
                                  int warmup, int timed);

/// trainer,vocab_size,param,mean_seconds,std_seconds,batches rows.
void save_timing_csv(const std::vector<TimingRecord>& records, const std::string& path);

}  // namespace rsm
