#include "mabmech/regret.hpp"

#include <cmath>
#include <vector>

#include "mabmech/parallel.hpp"
#include "mabmech/rng.hpp"

namespace mabmech {

RegretEstimate regret_stochastic(const AllocationRule& proto, const StochasticInstance& inst,
                                 int64_t trials, uint64_t seed, int threads) {
  if (trials < 1) throw ConfigError("regret_stochastic: need trials >= 1");
  if (inst.k != proto.agents() || inst.T != proto.horizon())
    throw ConfigError("regret_stochastic: instance/rule dimensions mismatch");

  double best = 0.0;
  for (int i = 0; i < inst.k; ++i) best = std::max(best, inst.ctrs[i] * inst.values[i]);

  std::vector<double> per_trial(trials);
  parallel_for(trials, threads, [&](int64_t trial) {
    auto rule = proto.clone();
    rule->reseed(key_hash(seed, static_cast<uint64_t>(trial), 0x5eed));
    rule->start(inst.bids);
    double regret = 0.0;
    for (int t = 0; t < inst.T; ++t) {
      int x = rule->next(t);
      bool y = bernoulli(inst.ctrs[x], seed, static_cast<uint64_t>(trial),
                         static_cast<uint64_t>(x), static_cast<uint64_t>(t));
      rule->observe(t, x, y);
      regret += best - inst.ctrs[x] * inst.values[x];
    }
    per_trial[trial] = regret;
  });

  RegretEstimate est;
  est.trials = trials;
  double sum = 0.0;
  for (double r : per_trial) sum += r;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double r : per_trial) ss += (r - est.mean) * (r - est.mean);
    est.se = std::sqrt(ss / (static_cast<double>(trials - 1) * static_cast<double>(trials)));
  }
  return est;
}

double regret_adversarial(const AllocationRule& proto, const BidProfile& bids,
                          const std::vector<double>& values, const Realization& rho, int seeds,
                          uint64_t base_seed) {
  int k = rho.agents(), T = rho.rounds();
  if (static_cast<int>(values.size()) != k)
    throw ConfigError("regret_adversarial: values dimension mismatch");

  double benchmark = 0.0;
  for (int i = 0; i < k; ++i) {
    double w = 0.0;
    for (int t = 0; t < T; ++t) w += rho.at(i, t) ? values[i] : 0.0;
    benchmark = std::max(benchmark, w);
  }

  int runs = proto.is_deterministic() ? 1 : std::max(1, seeds);
  double total = 0.0;
  for (int s = 0; s < runs; ++s) {
    auto rule = proto.clone();
    rule->reseed(key_hash(base_seed, static_cast<uint64_t>(s), 0xad5e));
    History h = run_allocation(*rule, bids, rho);
    double welfare = 0.0;
    for (int t = 0; t < T; ++t)
      if (h.clicked[t]) welfare += values[h.shown[t]];
    total += benchmark - welfare;
  }
  return total / runs;
}

}  // namespace mabmech
