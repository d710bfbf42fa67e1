#pragma once

#include <cstdint>
#include <vector>

#include "elastic/cca/core.hpp"

namespace elastic::harness {

// Network-free, per-RTT iteration of each algorithm's growth rule from
// beta * w_max back up to w_max:
//   newreno  w += alpha
//   elastic  w += sqrt(delta * w)
//   cubic    w  = W(k * rtt), K from w_max and (1 - beta)
//   ctcp     w += 1 + max(alpha_c * w^k - 1, 0)
//   agile    w += lambda(w)
struct EpochOracleOptions {
  double rtt_s = 0.1;
  double delta = 1.0;
  double reno_alpha = 1.0;
  double cubic_c = 0.4;
  double ctcp_alpha = 0.125;
  double ctcp_k = 0.75;
  double agile_lambda_max = 3.0;
  bool keep_windows = false;
};

struct EpochOracleResult {
  std::int64_t rounds = 0;
  std::vector<double> windows;  // window after each round, if requested
};

EpochOracleResult epoch_rounds(cca::Algorithm algorithm, double w_max, double beta,
                               const EpochOracleOptions& options = {});

}  // namespace elastic::harness
