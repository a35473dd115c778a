#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mabmech/allocation.hpp"

namespace mabmech {

struct PsimParams {
  int k = 0;
  int T = 0;
  int phases = 0;     // P
  int phase_len = 0;  // Q = floor(T/P); the last phase absorbs the remainder
  double eps = 0.0;   // learning rate (k ln k / T)^{1/3}
  double v_max = 1.0;

  // First round of phase p and the phase containing round t.
  int phase_start(int p) const { return p * phase_len; }
  int phase_of(int t) const {
    int p = t / phase_len;
    return p >= phases ? phases - 1 : p;
  }
};

// P = max(1, round((ln k)^{1/3} (T/k)^{2/3})), clamped so every phase holds at
// least k rounds; eps = (k ln k / T)^{1/3}. Throws when even P = 1 cannot fit
// k exploration rounds (k > T).
PsimParams psim_params(int k, int T, double v_max);

// Exploitation-round probability of agent i given per-agent exploration
// clicks s (accumulated over completed phases):
//   gamma_i = (1+eps)^{b_i s_i / v_max} / sum_j (1+eps)^{b_j s_j / v_max}.
double psim_gamma(const PsimParams& params, const BidProfile& bids, int agent,
                  std::span<const int64_t> s);

// Per-click price in an exploitation round,
//   b_i - (1/gamma_i(b_i)) * integral_0^{b_i} gamma_i(x) dx,
// evaluated in closed form and cross-validated against adaptive quadrature to
// 1e-9 relative; disagreement raises ConsistencyError. Exploration rounds are
// free. The price always lies in [0, b_i].
double psim_payment_per_click(const PsimParams& params, const BidProfile& bids, int agent,
                              std::span<const int64_t> s, bool cross_check = true);

// Phase-based multiplicative-weights allocation. Before round 1 (bid-
// independently) every phase receives k exploration rounds drawn without
// replacement and matched to agents by a random permutation; exploration
// clicks update the weights, exploitation rounds sample from gamma and
// discard their feedback.
class PsimRule final : public AllocationRule {
 public:
  PsimRule(int k, int T, double v_max, uint64_t seed);

  int agents() const override { return params_.k; }
  int horizon() const override { return params_.T; }
  const PsimParams& params() const { return params_; }

  void start(const BidProfile& bids) override;
  int next(int t) override;
  void observe(int t, int agent, bool clicked) override;
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<PsimRule>(*this);
  }
  bool is_deterministic() const override { return false; }
  void reseed(uint64_t seed) override { seed_ = seed; }

  // Exploration agent of round t in the current run, -1 for exploitation.
  int exploration_agent(int t) const { return schedule_[t]; }
  // Exploration clicks credited through the last completed phase.
  std::span<const int64_t> settled_clicks() const { return s_settled_; }

 private:
  void roll_schedule();

  PsimParams params_;
  uint64_t seed_;
  std::vector<double> bids_;
  std::vector<int32_t> schedule_;   // round -> exploration agent or -1
  std::vector<int64_t> s_settled_;  // clicks through phases < current
  std::vector<int64_t> s_current_;  // clicks including the current phase
  int current_phase_ = 0;
};

}  // namespace mabmech
