#include "mabmech/naive.hpp"

#include <cmath>

namespace mabmech {

int naive_t0(int k, int T) {
  if (k < 1 || T < k) throw ConfigError("naive_t0: need T >= k >= 1");
  double raw = std::pow(static_cast<double>(k), -2.0 / 3.0) *
               std::pow(static_cast<double>(T), 2.0 / 3.0) *
               std::cbrt(std::log(static_cast<double>(T)));
  int t0 = static_cast<int>(std::ceil(raw));
  return std::min(std::max(t0, 1), T / k);
}

NaiveRule::NaiveRule(int k, int T) : NaiveRule(k, T, naive_t0(k, T)) {}

NaiveRule::NaiveRule(int k, int T, int t0) : k_(k), T_(T), t0_(t0) {
  if (k < 1 || T < k) throw ConfigError("NaiveRule: need T >= k >= 1");
  if (t0 < 1 || static_cast<int64_t>(k) * t0 > T)
    throw ConfigError("NaiveRule: need 1 <= t0 and k*t0 <= T");
}

void NaiveRule::start(const BidProfile& bids) {
  if (bids.agents() != k_) throw ConfigError("NaiveRule: bid dimension mismatch");
  bids_ = bids.values();
  clicks_.assign(k_, 0);
  winner_ = -1;
}

int NaiveRule::next(int t) {
  if (t < k_ * t0_) return t % k_;
  if (winner_ < 0) {
    winner_ = 0;
    double best = clicks_[0] * bids_[0];
    for (int i = 1; i < k_; ++i) {
      double p = clicks_[i] * bids_[i];
      if (p > best) {
        best = p;
        winner_ = i;
      }
    }
  }
  return winner_;
}

void NaiveRule::observe(int t, int agent, bool clicked) {
  if (t < k_ * t0_ && clicked) clicks_[agent] += 1;
}

std::vector<int64_t> naive_exploration_clicks(const History& history, int k, int t0) {
  if (history.rounds() < k * t0)
    throw ConfigError("naive_exploration_clicks: history shorter than exploration phase");
  std::vector<int64_t> c(k, 0);
  for (int t = 0; t < k * t0; ++t) {
    if (history.shown[t] != t % k)
      throw ConfigError("naive_exploration_clicks: history does not follow round-robin");
    if (history.clicked[t]) c[history.shown[t]] += 1;
  }
  return c;
}

namespace {

template <class Num>
std::vector<Num> naive_payments_impl(const History& history, std::span<const Num> bids, int k,
                                     int t0) {
  auto c = naive_exploration_clicks(history, k, t0);
  int winner = 0;
  Num best = Num(c[0]) * bids[0];
  for (int i = 1; i < k; ++i) {
    Num p = Num(c[i]) * bids[i];
    if (p > best) {
      best = p;
      winner = i;
    }
  }

  std::vector<Num> pay(k, Num(0));
  if (c[winner] == 0) return pay;  // all products zero, nothing to charge

  Num second(0);
  for (int j = 0; j < k; ++j) {
    if (j == winner) continue;
    Num p = Num(c[j]) * bids[j];
    if (p > second) second = p;
  }
  Num price = second / Num(c[winner]);

  int64_t exploit_clicks = 0;
  for (int t = k * t0; t < history.rounds(); ++t) {
    if (history.shown[t] != winner)
      throw ConfigError("naive_payments: exploitation round shows a non-winner");
    if (history.clicked[t]) exploit_clicks += 1;
  }
  pay[winner] = price * Num(exploit_clicks);
  return pay;
}

}  // namespace

std::vector<double> naive_payments(const History& history, const BidProfile& bids, int t0) {
  return naive_payments_impl<double>(history, bids.values(), bids.agents(), t0);
}

std::vector<double> naive_payments(const History& history, const BidProfile& bids) {
  int k = bids.agents();
  return naive_payments(history, bids, naive_t0(k, history.rounds()));
}

std::vector<Rational> naive_payments_exact(const History& history,
                                           std::span<const Rational> bids, int t0) {
  return naive_payments_impl<Rational>(history, bids, static_cast<int>(bids.size()), t0);
}

History naive_run_exact(std::span<const Rational> bids, const Realization& rho, int t0) {
  int k = rho.agents(), T = rho.rounds();
  if (static_cast<int>(bids.size()) != k)
    throw ConfigError("naive_run_exact: bid dimension mismatch");
  if (t0 < 1 || k * t0 > T) throw ConfigError("naive_run_exact: bad t0");
  History h;
  std::vector<int64_t> c(k, 0);
  for (int t = 0; t < k * t0; ++t) {
    int x = t % k;
    bool y = rho.at(x, t);
    c[x] += y ? 1 : 0;
    h.push(x, y);
  }
  int winner = naive_winner_exact(c, bids);
  for (int t = k * t0; t < T; ++t) h.push(winner, rho.at(winner, t));
  return h;
}

int naive_winner_exact(std::span<const int64_t> clicks, std::span<const Rational> bids) {
  int winner = 0;
  Rational best = Rational(clicks[0]) * bids[0];
  for (int i = 1; i < static_cast<int>(bids.size()); ++i) {
    Rational p = Rational(clicks[i]) * bids[i];
    if (p > best) {
      best = p;
      winner = i;
    }
  }
  return winner;
}

}  // namespace mabmech
