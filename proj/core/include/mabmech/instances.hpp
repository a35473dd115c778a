#pragma once

#include "mabmech/types.hpp"

namespace mabmech {

// The two hard instance families behind the k^{1/3} T^{2/3} lower bound.
//
//   PerturbedCtr (I_i): CTRs are 1/2 everywhere except 1/2 + eps at agent i,
//                       eps = k^{1/3} T^{-1/3}; every bid and value is v_max.
//   SkewedBids  (J_i):  CTRs are 1/2 everywhere; agent i bids/values v_max,
//                       everyone else v_max / 2.
enum class LowerBoundKind { PerturbedCtr, SkewedBids };

double lower_bound_epsilon(int k, int T);

// agent is 0-based. Throws ConfigError when eps > 1/2 (CTR would leave [0,1]).
StochasticInstance make_lower_bound_instance(LowerBoundKind kind, int agent, int k, int T,
                                             double v_max);

// delta-gap instance: v_i = v_max for all i, mu_1 = 1/2 + delta, mu_j = 1/2
// for j >= 2, so mu_1 v_1 - mu_2 v_2 = delta * max_i v_i. Requires
// 0 < delta <= 1/4.
StochasticInstance make_delta_gap_instance(double delta, int k, int T, double v_max);

}  // namespace mabmech
