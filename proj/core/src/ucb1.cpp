#include "mabmech/ucb1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mabmech {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double Ucb1State::mean(int i) const {
  if (pulls[i] == 0) return 0.0;  // 0/0 convention
  return static_cast<double>(clicks[i]) / static_cast<double>(pulls[i]);
}

double Ucb1State::radius(int i) const {
  if (pulls[i] == 0) return kInf;  // 1/0 convention
  if (elapsed <= 1) return 0.0;    // ln 1 = 0
  return std::sqrt(8.0 * std::log(static_cast<double>(elapsed)) /
                   static_cast<double>(pulls[i]));
}

double Ucb1State::index(int i, double bid) const {
  if (pulls[i] == 0) return kInf;
  return (mean(i) + radius(i)) * bid;
}

int ucb1_pick(const Ucb1State& st, const BidProfile& bids) {
  int k = st.agents();
  if (bids.agents() != k) throw ConfigError("ucb1_pick: bid dimension mismatch");

  // Unpulled agents have an infinite index; among them the larger bid wins,
  // then the smaller agent index.
  int best_unpulled = -1;
  for (int i = 0; i < k; ++i) {
    if (st.pulls[i] != 0) continue;
    if (best_unpulled < 0 || bids[i] > bids[best_unpulled]) best_unpulled = i;
  }
  if (best_unpulled >= 0) return best_unpulled;

  int best = 0;
  double best_index = st.index(0, bids[0]);
  for (int i = 1; i < k; ++i) {
    double idx = st.index(i, bids[i]);
    if (idx > best_index) {
      best_index = idx;
      best = i;
    }
  }
  return best;
}

double ucb1_round_price(const Ucb1State& st, const BidProfile& bids, int winner) {
  int k = st.agents();
  if (k == 1) return 0.0;

  bool winner_unpulled = st.pulls[winner] == 0;
  double price;
  if (winner_unpulled) {
    // inf/inf: the ratio ((M b_j) / M) -> b_j, so charge the bid of the best
    // unpulled competitor; against only finite competitors the ratio is 0.
    double top = -1.0;
    for (int j = 0; j < k; ++j)
      if (j != winner && st.pulls[j] == 0) top = std::max(top, bids[j]);
    price = top < 0 ? 0.0 : top;
  } else {
    double runner_up = 0.0;
    bool unpulled_rival = false;
    for (int j = 0; j < k; ++j) {
      if (j == winner) continue;
      if (st.pulls[j] == 0) {
        unpulled_rival = true;  // infinite rival index; clip below caps it
        break;
      }
      runner_up = std::max(runner_up, (st.mean(j) + st.radius(j)) * bids[j]);
    }
    price = unpulled_rival ? bids[winner] : runner_up / (st.mean(winner) + st.radius(winner));
  }
  return std::clamp(price, 0.0, bids[winner]);
}

}  // namespace mabmech
