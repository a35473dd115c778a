#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mabmech/allocation.hpp"
#include "mabmech/rational.hpp"

namespace mabmech {

// The unrestricted-payment oracle:
//   P_i = b_i * C_i(b_i, b_{-i}; rho) - integral_0^{b_i} C_i(x, b_{-i}; rho) dx,
// where C_i(x) is the click count of agent i when her bid is swept to x and
// the rule is re-run on the full (known) realization. C_i is an integer step
// function of x; its jumps are located by recursive bisection down to `tol`
// and the integral is then a finite rectangle sum.
//
// Intervals whose endpoints carry equal click counts are treated as constant,
// which is valid exactly when C_i is monotone in x; that is the regime in
// which the Myerson payment is defined at all. Rules must be deterministic.
// A diagnostic ConsistencyError fires if more than T*(k+1) jumps appear.
double myerson_payment(const AllocationRule& proto, const BidProfile& bids,
                       const Realization& rho, int agent, double tol);

// Exact mode. clicks_of_bid must report C_i at an exact rational bid; the
// candidate set must contain every true breakpoint (it is sorted, deduped and
// clipped to (0, b_i) internally). The integral is an exact rectangle sum over
// candidate segments, evaluated at rational midpoints.
Rational myerson_payment_exact(const std::function<int64_t(const Rational&)>& clicks_of_bid,
                               const Rational& bid,
                               std::vector<Rational> candidate_breakpoints);

// Candidate breakpoints for rules whose decisions compare click-count-scaled
// bids: all ratios b_j * p / q with j != i, 0 <= p <= T, 1 <= q <= T.
// Sufficient for the naive rule and the fixed-threshold rules used in tests.
std::vector<Rational> myerson_breakpoint_candidates(std::span<const Rational> other_bids,
                                                    int T);

// Exact click oracle for the naive rule: C_i as a function of agent i's
// rational bid, for a fixed realization and opponents' bids.
std::function<int64_t(const Rational&)> naive_clicks_oracle(std::vector<Rational> bids,
                                                            Realization rho, int agent,
                                                            int t0);

}  // namespace mabmech
