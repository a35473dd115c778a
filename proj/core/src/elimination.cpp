#include "mabmech/elimination.hpp"

#include <cmath>
#include <limits>

namespace mabmech {

double elimination_radius(int T, int64_t n, double v_max) {
  if (n <= 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(8.0 * std::log(static_cast<double>(T)) / static_cast<double>(n)) * v_max;
}

EliminationRule::EliminationRule(int k, int T, double v_max)
    : k_(k), T_(T), v_max_(v_max), state_(k) {
  if (k < 1 || T < k) throw ConfigError("EliminationRule: need T >= k >= 1");
  if (!(v_max > 0)) throw ConfigError("EliminationRule: v_max must be positive");
}

void EliminationRule::start(const BidProfile& bids) {
  if (bids.agents() != k_) throw ConfigError("EliminationRule: bid dimension mismatch");
  bids_ = bids.values();
  state_ = EliminationState(k_);
  state_.r0_horizon = elimination_radius(T_, T_, v_max_);
  cursor_ = 0;
  pass_remaining_ = k_;
}

int EliminationRule::next(int) {
  while (state_.active[cursor_] == 0) cursor_ = (cursor_ + 1) % k_;
  return cursor_;
}

void EliminationRule::observe(int, int agent, bool clicked) {
  state_.pulls[agent] += 1;
  state_.clicks[agent] += clicked ? 1 : 0;
  cursor_ = (cursor_ + 1) % k_;
  pass_remaining_ -= 1;
  if (pass_remaining_ == 0) {
    maybe_eliminate();
    cursor_ = 0;
    pass_remaining_ = 0;
    for (int i = 0; i < k_; ++i) pass_remaining_ += state_.active[i];
  }
}

void EliminationRule::maybe_eliminate() {
  double best = -1.0;
  for (int i = 0; i < k_; ++i) {
    if (!state_.active[i]) continue;
    double product = state_.pulls[i] == 0
                         ? 0.0
                         : static_cast<double>(state_.clicks[i]) / state_.pulls[i] * bids_[i];
    best = std::max(best, product);
  }
  for (int i = 0; i < k_; ++i) {
    if (!state_.active[i]) continue;
    double product = state_.pulls[i] == 0
                         ? 0.0
                         : static_cast<double>(state_.clicks[i]) / state_.pulls[i] * bids_[i];
    double radius = elimination_radius(T_, state_.pulls[i], v_max_);
    if (best - product > radius) state_.active[i] = 0;
  }
}

}  // namespace mabmech
