#pragma once

#include <cstdint>

#include "mabmech/allocation.hpp"
#include "mabmech/types.hpp"

namespace mabmech {

struct RegretEstimate {
  double mean = 0.0;
  double se = 0.0;
  int64_t trials = 0;
};

// Monte-Carlo estimate of T v* mu* - E[sum_t mu_{x_t} v_{x_t}] with
// i* = argmax_i mu_i v_i. Clicks are drawn lazily per (trial, agent, round)
// from the counter-based stream keyed by `seed`, so two rules estimated under
// the same seed face identical click tables. The estimator accumulates the
// exact per-round expected welfare mu_{x_t} v_{x_t} rather than realized
// clicks, which has the same mean and lower variance.
RegretEstimate regret_stochastic(const AllocationRule& proto, const StochasticInstance& inst,
                                 int64_t trials, uint64_t seed, int threads = 1);

// Adversarial regret on a fixed realization:
//   max_i v_i sum_t rho_i(t)  -  sum_t v_{x_t} rho_{x_t}(t),
// averaged over `seeds` runs of the rule. A deterministic rule is run once.
double regret_adversarial(const AllocationRule& proto, const BidProfile& bids,
                          const std::vector<double>& values, const Realization& rho, int seeds,
                          uint64_t base_seed);

}  // namespace mabmech
