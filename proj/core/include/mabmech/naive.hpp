#pragma once

#include <span>
#include <vector>

#include "mabmech/allocation.hpp"
#include "mabmech/rational.hpp"

namespace mabmech {

// Exploration rounds per agent: ceil(k^{-2/3} T^{2/3} (ln T)^{1/3}),
// clamped to floor(T/k) so exploration fits in the horizon.
int naive_t0(int k, int T);

// Two-phase mechanism: round-robin exploration for k*T0 rounds, then the
// agent i* maximizing (exploration clicks c_i) * b_i is shown in every
// remaining round. Ties in the argmax go to the lowest index.
class NaiveRule final : public AllocationRule {
 public:
  NaiveRule(int k, int T);          // T0 from naive_t0
  NaiveRule(int k, int T, int t0);  // explicit exploration length per agent

  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  int exploration_rounds_per_agent() const { return t0_; }

  void start(const BidProfile& bids) override;
  int next(int t) override;
  void observe(int t, int agent, bool clicked) override;
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<NaiveRule>(*this);
  }

 private:
  int k_, T_, t0_;
  std::vector<double> bids_;
  std::vector<int64_t> clicks_;  // exploration clicks c_i
  int winner_ = -1;
};

// Exploration clicks per agent recovered from the first k*t0 rounds of a
// history produced by NaiveRule.
std::vector<int64_t> naive_exploration_clicks(const History& history, int k, int t0);

// Winner pays max_{j != i*} c_j b_j / c_{i*} per exploitation click; every
// other payment is zero and exploration is free. When c_{i*} = 0 all products
// are zero and the price is defined as 0.
std::vector<double> naive_payments(const History& history, const BidProfile& bids, int t0);
std::vector<double> naive_payments(const History& history, const BidProfile& bids);

// Exact-rational variant for oracle comparisons. Winner selection uses exact
// products c_i * b_i, so it agrees with NaiveRule whenever the double
// computation is exact and fixes it when it is not.
std::vector<Rational> naive_payments_exact(const History& history,
                                           std::span<const Rational> bids, int t0);

int naive_winner_exact(std::span<const int64_t> clicks, std::span<const Rational> bids);

// Runs the naive allocation with exact winner selection. Needed when bids are
// rationals whose products can tie: double argmax may break such ties
// differently than the exact comparison would.
History naive_run_exact(std::span<const Rational> bids, const Realization& rho, int t0);

}  // namespace mabmech
