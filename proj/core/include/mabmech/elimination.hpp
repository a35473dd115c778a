#pragma once

#include <vector>

#include "mabmech/allocation.hpp"

namespace mabmech {

// Confidence radius used by the elimination allocation after n samples per
// active agent: sqrt(8 ln T / n) * v_max. At n = T this is the horizon-scale
// radius sqrt(8 ln T / T) * v_max.
double elimination_radius(int T, int64_t n, double v_max);

struct EliminationState {
  std::vector<uint8_t> active;
  std::vector<int64_t> pulls;
  std::vector<int64_t> clicks;
  double r0_horizon = 0.0;  // sqrt(8 ln T / T) * v_max

  explicit EliminationState(int k) : active(k, 1), pulls(k, 0), clicks(k, 0) {}
};

// Successive elimination: round-robin over the active set; after each full
// pass, permanently deactivate every agent whose sample product
// (empirical CTR times bid) sits more than the current confidence radius
// below the best active sample product. The agent attaining the maximum is
// never deactivated, so the active set stays nonempty.
class EliminationRule final : public AllocationRule {
 public:
  EliminationRule(int k, int T, double v_max = 1.0);

  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  void start(const BidProfile& bids) override;
  int next(int t) override;
  void observe(int t, int agent, bool clicked) override;
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<EliminationRule>(*this);
  }

  const EliminationState& state() const { return state_; }

 private:
  void maybe_eliminate();

  int k_, T_;
  double v_max_;
  std::vector<double> bids_;
  EliminationState state_;
  int cursor_ = 0;        // position in the current pass
  int pass_remaining_ = 0; // active agents still to play this pass
};

}  // namespace mabmech
