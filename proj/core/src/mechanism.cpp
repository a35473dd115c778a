#include "mabmech/mechanism.hpp"

namespace mabmech {

MechanismOutcome NaiveMechanism::run(const BidProfile& bids, const Realization& rho) {
  MechanismOutcome out;
  out.history = run_allocation(rule_, bids, rho);
  out.clicks = click_allocation(out.history, rule_.agents());
  out.payments = naive_payments(out.history, bids, rule_.exploration_rounds_per_agent());
  return out;
}

MechanismOutcome Ucb1Mechanism::run(const BidProfile& bids, const Realization& rho) {
  if (rho.agents() != k_ || rho.rounds() != T_)
    throw ConfigError("Ucb1Mechanism: realization dimensions mismatch");
  if (bids.agents() != k_) throw ConfigError("Ucb1Mechanism: bid dimension mismatch");

  Ucb1Rule rule(k_, T_);
  rule.start(bids);
  MechanismOutcome out;
  out.payments.assign(k_, 0.0);
  for (int t = 0; t < T_; ++t) {
    int x = rule.next(t);
    double price = ucb1_round_price(rule.state(), bids, x);
    bool y = rho.at(x, t);
    if (y) out.payments[x] += price;  // charged only on click
    rule.observe(t, x, y);
    out.history.push(x, y);
  }
  out.clicks = click_allocation(out.history, k_);
  return out;
}

MechanismOutcome PsimMechanism::run(const BidProfile& bids, const Realization& rho) {
  int k = rule_.agents(), T = rule_.horizon();
  if (rho.agents() != k || rho.rounds() != T)
    throw ConfigError("PsimMechanism: realization dimensions mismatch");

  rule_.start(bids);
  MechanismOutcome out;
  out.payments.assign(k, 0.0);
  for (int t = 0; t < T; ++t) {
    int x = rule_.next(t);
    bool y = rho.at(x, t);
    bool exploration = rule_.exploration_agent(t) >= 0;
    if (!exploration && y) {
      out.payments[x] +=
          psim_payment_per_click(rule_.params(), bids, x, rule_.settled_clicks());
    }
    rule_.observe(t, x, y);
    out.history.push(x, y);
  }
  out.clicks = click_allocation(out.history, k);
  return out;
}

MechanismOutcome ZeroPaymentMechanism::run(const BidProfile& bids, const Realization& rho) {
  MechanismOutcome out;
  out.history = run_allocation(*rule_, bids, rho);
  out.clicks = click_allocation(out.history, rule_->agents());
  out.payments.assign(rule_->agents(), 0.0);
  return out;
}

}  // namespace mabmech
