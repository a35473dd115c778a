#include "mabmech/allocation.hpp"

namespace mabmech {

History run_allocation(AllocationRule& rule, const BidProfile& bids, const ClickFn& click,
                       int T) {
  if (bids.agents() != rule.agents())
    throw ConfigError("run_allocation: bids/rule agent count mismatch");
  if (T != rule.horizon()) throw ConfigError("run_allocation: horizon mismatch");
  History h;
  h.shown.reserve(T);
  h.clicked.reserve(T);
  rule.start(bids);
  for (int t = 0; t < T; ++t) {
    int x = rule.next(t);
    if (x < 0 || x >= rule.agents()) throw ConfigError("run_allocation: rule chose bad agent");
    bool y = click(x, t);
    rule.observe(t, x, y);
    h.push(x, y);
  }
  return h;
}

History run_allocation(AllocationRule& rule, const BidProfile& bids, const Realization& rho) {
  if (rho.agents() != rule.agents() || rho.rounds() != rule.horizon())
    throw ConfigError("run_allocation: realization dimensions mismatch");
  return run_allocation(
      rule, bids, [&rho](int agent, int t) { return rho.at(agent, t); }, rho.rounds());
}

ClickAllocation click_allocation(const History& history, int k) {
  ClickAllocation a;
  a.clicks.assign(k, 0);
  a.impressions.assign(k, 0);
  for (int t = 0; t < history.rounds(); ++t) {
    int x = history.shown[t];
    if (x < 0 || x >= k) throw ConfigError("click_allocation: agent index out of range");
    a.impressions[x] += 1;
    a.clicks[x] += history.clicked[t] ? 1 : 0;
  }
  return a;
}

}  // namespace mabmech
