#pragma once

#include <optional>
#include <vector>

#include "mabmech/allocation.hpp"

namespace mabmech {

// Per-agent UCB statistics after `elapsed` rounds.
struct Ucb1State {
  std::vector<int64_t> pulls;   // n_{i,t}
  std::vector<int64_t> clicks;  // clicks so far
  int64_t elapsed = 0;          // t, the number of completed rounds

  explicit Ucb1State(int k) : pulls(k, 0), clicks(k, 0) {}

  int agents() const { return static_cast<int>(pulls.size()); }
  double mean(int i) const;    // 0/0 = 0
  double radius(int i) const;  // sqrt(8 ln t / n_i); +inf when n_i = 0
  // (mean + radius) * b_i; +inf for unpulled agents.
  double index(int i, double bid) const;
};

// Winner of round t+1: argmax_i (mu_bar_i + r_i) b_i with the conventions
// 0/0 = 0 and 1/0 = +inf. Unpulled agents all carry an infinite index; that
// tie is broken by the higher bid, then the lower agent index, so the
// initialization order itself depends on the bids.
int ucb1_pick(const Ucb1State& st, const BidProfile& bids);

// Per-click price for the current winner:
//   min(b_w, max_{j != w} (mu_bar_j + r_j) b_j / (mu_bar_w + r_w)),
// clipped into [0, b_w]. While several agents are unpulled the ratio is
// inf/inf, which resolves to the bid of the best unpulled competitor; a lone
// unpulled winner against finite indices pays 0. k = 1 always pays 0.
double ucb1_round_price(const Ucb1State& st, const BidProfile& bids, int winner);

class Ucb1Rule final : public AllocationRule {
 public:
  Ucb1Rule(int k, int T) : k_(k), T_(T), state_(k) {
    if (k < 1 || T < 1) throw ConfigError("Ucb1Rule: need k >= 1, T >= 1");
  }

  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  void start(const BidProfile& bids) override {
    if (bids.agents() != k_) throw ConfigError("Ucb1Rule: bid dimension mismatch");
    bids_ = bids;
    state_ = Ucb1State(k_);
  }
  int next(int) override { return ucb1_pick(state_, *bids_); }
  void observe(int, int agent, bool clicked) override {
    state_.pulls[agent] += 1;
    state_.clicks[agent] += clicked ? 1 : 0;
    state_.elapsed += 1;
  }
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<Ucb1Rule>(*this);
  }

  const Ucb1State& state() const { return state_; }

 private:
  int k_, T_;
  Ucb1State state_;
  std::optional<BidProfile> bids_;
};

}  // namespace mabmech
