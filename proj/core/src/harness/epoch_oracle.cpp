#include "elastic/harness/epoch_oracle.hpp"

#include <cmath>
#include <string>

#include "elastic/cca/baselines.hpp"
#include "elastic/errors.hpp"

namespace elastic::harness {
namespace {

constexpr std::int64_t kMaxRounds = 100'000'000;

double agile_gain(double w, double w_loss, double w_degraded, double lambda_max) {
  cca::AgileParams p{.lambda = 1.0, .lambda_max = lambda_max, .w_loss = w_loss,
                     .w_degraded = w_degraded};
  return cca::agile_lambda(p, w);
}

}  // namespace

EpochOracleResult epoch_rounds(cca::Algorithm algorithm, double w_max, double beta,
                               const EpochOracleOptions& o) {
  if (!(w_max >= 2.0) || !std::isfinite(w_max)) throw DomainError("w_max must be finite and >= 2");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (!(o.rtt_s > 0.0)) throw DomainError("rtt must be positive");

  const double start = beta * w_max;
  cca::CubicParams cubic{.c_const = o.cubic_c, .cubic_beta = 1.0 - beta, .w_max = w_max};

  EpochOracleResult result;
  double w = start;
  while (w < w_max) {
    if (result.rounds >= kMaxRounds) throw DomainError("epoch oracle did not converge");
    ++result.rounds;
    switch (algorithm) {
      case cca::Algorithm::NewReno:
        w += o.reno_alpha;
        break;
      case cca::Algorithm::Elastic:
        w += std::sqrt(o.delta * w);
        break;
      case cca::Algorithm::Cubic:
        w = cca::cubic_window(cubic, static_cast<double>(result.rounds) * o.rtt_s);
        break;
      case cca::Algorithm::Ctcp:
        w += 1.0 + std::max(o.ctcp_alpha * std::pow(w, o.ctcp_k) - 1.0, 0.0);
        break;
      case cca::Algorithm::Agile:
        w += agile_gain(w, w_max, start, o.agile_lambda_max);
        break;
    }
    if (o.keep_windows) result.windows.push_back(w);
  }
  return result;
}

}  // namespace elastic::harness
