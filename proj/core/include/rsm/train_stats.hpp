#pragma once

#include <vector>

#include "rsm/model.hpp"

namespace rsm {

struct EpochStats {
  int epoch = 0;            // 1-based
  double objective = 0.0;   // CD: mean data free energy; NCE: J
  double proxy_accuracy = -1.0;  // NCE: noise-vs-data classification rate; -1 if n/a
  double wall_seconds = 0.0;
};

struct TrainResult {
  RsmParams params;
  std::vector<EpochStats> epochs;
};

}  // namespace rsm
