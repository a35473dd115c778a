#include "mabmech/instances.hpp"

#include <cmath>

namespace mabmech {

double lower_bound_epsilon(int k, int T) {
  return std::cbrt(static_cast<double>(k)) / std::cbrt(static_cast<double>(T));
}

StochasticInstance make_lower_bound_instance(LowerBoundKind kind, int agent, int k, int T,
                                             double v_max) {
  if (k < 1 || T < 1) throw ConfigError("make_lower_bound_instance: need k,T >= 1");
  if (agent < 0 || agent >= k) throw ConfigError("make_lower_bound_instance: agent out of range");
  if (!(v_max > 0)) throw ConfigError("make_lower_bound_instance: v_max must be positive");

  std::vector<double> mu(k, 0.5);
  std::vector<double> v(k, v_max);
  if (kind == LowerBoundKind::PerturbedCtr) {
    double eps = lower_bound_epsilon(k, T);
    if (eps > 0.5)
      throw ConfigError("make_lower_bound_instance: eps = k^{1/3} T^{-1/3} exceeds 1/2");
    mu[agent] = 0.5 + eps;
  } else {
    for (int j = 0; j < k; ++j)
      if (j != agent) v[j] = v_max / 2.0;
  }
  BidProfile bids(v);  // truthful bids
  return StochasticInstance(k, T, std::move(mu), std::move(v), std::move(bids), v_max);
}

StochasticInstance make_delta_gap_instance(double delta, int k, int T, double v_max) {
  if (!(delta > 0.0) || delta > 0.25)
    throw ConfigError("make_delta_gap_instance: delta must lie in (0, 1/4]");
  if (k < 2) throw ConfigError("make_delta_gap_instance: need k >= 2");
  if (!(v_max > 0)) throw ConfigError("make_delta_gap_instance: v_max must be positive");

  std::vector<double> mu(k, 0.5);
  mu[0] = 0.5 + delta;
  std::vector<double> v(k, v_max);
  BidProfile bids(v);
  return StochasticInstance(k, T, std::move(mu), std::move(v), std::move(bids), v_max);
}

}  // namespace mabmech
