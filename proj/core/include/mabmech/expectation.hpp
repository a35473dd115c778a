#pragma once

#include <cstdint>

#include "mabmech/allocation.hpp"
#include "mabmech/ctr_polynomial.hpp"

namespace mabmech {

// Enumeration guards for the symbolic paths: 2^T consistent histories for a
// deterministic rule, k^T 2^T raw histories for the uniform-exploration
// identities.
struct SymbolicBudget {
  int max_kT = 12;
  int64_t max_histories = 4096;

  void check_consistent(int k, int T) const;  // 2^T paths
  void check_full(int k, int T) const;        // (2k)^T paths
};

// P[h] = prod_t Pr[X_t = x_t | h^{t-1}] mu_{x_t}^{y_t} (1-mu_{x_t})^{1-y_t}
// for a deterministic rule (each factor Pr is 0 or 1). Returns the zero
// polynomial iff the history contradicts the rule's decisions.
RationalPoly history_probability_polynomial(const AllocationRule& proto, const BidProfile& bids,
                                            const History& h);

// C_i(b) = sum over consistent histories of P[h] * clicks_i(h).
template <class Coef>
CtrPolynomial<Coef> expected_clicks_polynomial(const AllocationRule& proto,
                                               const BidProfile& bids, int agent,
                                               const SymbolicBudget& budget = {});

// The expected Myerson payment, coefficient-wise over the bid sweep:
//   gamma * [ b_i C_i(b_i; .) - integral_0^{b_i} C_i(x; .) dx ],
// a polynomial of degree <= T. Breakpoints of the polynomial-valued step
// function x -> C_i(x) are located by bisection to width tol.
DoublePoly myerson_expected_payment_polynomial(const AllocationRule& proto,
                                               const BidProfile& bids, int agent, double gamma,
                                               double tol = 1e-9,
                                               const SymbolicBudget& budget = {});

// Membership in the relevant-history set H(Q) for monomial Q with exponents
// alpha: the first deg(Q) rounds show agent 1 alpha_1 times, all clicked,
// then agent 2 alpha_2 times, all clicked, ..., up to agent k; the remaining
// rounds are unconstrained. The set is the same for every charged agent; the
// agent argument only selects whose payment the caller is assembling.
bool relevant_history_member(const std::vector<int>& exponents, int agent, const History& h);

enum class MixtureBranch { Main, Explore };  // A* vs uniform exploration

// Ex-post charge reproducing the expected payment: zero on the A* branch; on
// the exploration branch 1/(1-gamma) * sum over monomials Q of P^M_i whose
// relevant-history set contains h of k^{deg Q} * coef(Q).
double monomial_payment(const History& h, int agent, const DoublePoly& expected_payment,
                        double gamma, MixtureBranch branch);

struct AgentZScore {
  double mc_mean = 0.0;
  double mc_se = 0.0;
  double target = 0.0;
  double z = 0.0;
};

struct ExpectedPaymentReport {
  std::vector<AgentZScore> agents;
  int64_t trials = 0;
  bool all_within(double z_cap) const {
    for (const auto& a : agents)
      if (std::abs(a.z) > z_cap) return false;
    return true;
  }
};

// Runs the gamma-mixture (A* w.p. gamma, uniform exploration otherwise) with
// monomial payments on clicks drawn from mu, and z-tests the per-agent mean
// payment against the P^M_i polynomial evaluated at mu.
ExpectedPaymentReport verify_expected_payment(const AllocationRule& proto,
                                              const BidProfile& bids, double gamma,
                                              const std::vector<double>& mu, int64_t trials,
                                              uint64_t seed, int threads = 1);

extern template CtrPolynomial<Rational> expected_clicks_polynomial<Rational>(
    const AllocationRule&, const BidProfile&, int, const SymbolicBudget&);
extern template CtrPolynomial<double> expected_clicks_polynomial<double>(
    const AllocationRule&, const BidProfile&, int, const SymbolicBudget&);

}  // namespace mabmech
