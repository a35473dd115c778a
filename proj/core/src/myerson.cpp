#include "mabmech/myerson.hpp"

#include <algorithm>
#include <cmath>

#include "mabmech/naive.hpp"

namespace mabmech {

namespace {

int64_t clicks_at_bid(const AllocationRule& proto, const BidProfile& bids,
                      const Realization& rho, int agent, double x) {
  auto rule = proto.clone();
  History h = run_allocation(*rule, bids.with_bid(agent, x), rho);
  int64_t c = 0;
  for (int t = 0; t < h.rounds(); ++t)
    if (h.shown[t] == agent && h.clicked[t]) ++c;
  return c;
}

}  // namespace

double myerson_payment(const AllocationRule& proto, const BidProfile& bids,
                       const Realization& rho, int agent, double tol) {
  if (!proto.is_deterministic())
    throw ConfigError("myerson_payment: rule must be deterministic");
  if (agent < 0 || agent >= bids.agents())
    throw ConfigError("myerson_payment: agent out of range");
  double b_i = bids[agent];
  if (!(tol > 0)) throw ConfigError("myerson_payment: tol must be positive");

  auto clicks = [&](double x) { return clicks_at_bid(proto, bids, rho, agent, x); };

  // Localize the jumps of C_i on [0, b_i].
  struct Interval {
    double lo, hi;
    int64_t clo, chi;
  };
  std::vector<Interval> work{{0.0, b_i, clicks(0.0), clicks(b_i)}};
  std::vector<std::pair<double, double>> jumps;  // localized breakpoint brackets
  int64_t max_jumps =
      static_cast<int64_t>(rho.rounds()) * (static_cast<int64_t>(rho.agents()) + 1);
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    if (iv.clo == iv.chi) continue;  // constant for monotone C_i
    if (iv.hi - iv.lo <= tol) {
      jumps.emplace_back(iv.lo, iv.hi);
      if (static_cast<int64_t>(jumps.size()) > max_jumps)
        throw ConsistencyError("myerson_payment: breakpoint count exceeds T*(k+1)");
      continue;
    }
    double mid = 0.5 * (iv.lo + iv.hi);
    int64_t cmid = clicks(mid);
    work.push_back({iv.lo, mid, iv.clo, cmid});
    work.push_back({mid, iv.hi, cmid, iv.chi});
  }
  std::sort(jumps.begin(), jumps.end());

  // Rectangle sum over the constant segments between localized jumps.
  double integral = 0.0;
  double cursor = 0.0;
  for (const auto& [jlo, jhi] : jumps) {
    if (jlo > cursor) integral += (jlo - cursor) * clicks(0.5 * (cursor + jlo));
    // Within the bracket the value is between the endpoint counts; the bracket
    // is at most tol wide, so charge its midpoint value.
    integral += (jhi - jlo) * 0.5 * (clicks(jlo) + clicks(jhi));
    cursor = jhi;
  }
  if (cursor < b_i) integral += (b_i - cursor) * clicks(0.5 * (cursor + b_i));

  return b_i * clicks(b_i) - integral;
}

Rational myerson_payment_exact(const std::function<int64_t(const Rational&)>& clicks_of_bid,
                               const Rational& bid, std::vector<Rational> candidates) {
  Rational zero(0);
  std::vector<Rational> cuts;
  cuts.push_back(zero);
  for (auto& c : candidates)
    if (c > zero && c < bid) cuts.push_back(c);
  cuts.push_back(bid);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Rational integral(0);
  Rational half(1, 2);
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    Rational width = cuts[s + 1] - cuts[s];
    Rational mid = (cuts[s] + cuts[s + 1]) * half;
    integral += width * Rational(clicks_of_bid(mid));
  }
  return bid * Rational(clicks_of_bid(bid)) - integral;
}

std::vector<Rational> myerson_breakpoint_candidates(std::span<const Rational> other_bids,
                                                    int T) {
  std::vector<Rational> out;
  out.reserve(other_bids.size() * static_cast<size_t>(T + 1) * T);
  for (const Rational& b : other_bids)
    for (int p = 0; p <= T; ++p)
      for (int q = 1; q <= T; ++q) out.push_back(b * Rational(p, q));
  return out;
}

std::function<int64_t(const Rational&)> naive_clicks_oracle(std::vector<Rational> bids,
                                                            Realization rho, int agent,
                                                            int t0) {
  int k = rho.agents();
  int T = rho.rounds();
  if (static_cast<int>(bids.size()) != k)
    throw ConfigError("naive_clicks_oracle: bid dimension mismatch");

  // Exploration clicks are bid-independent; precompute them, plus agent i's
  // exploitation clicks if she wins.
  std::vector<int64_t> expl(k, 0);
  for (int t = 0; t < k * t0; ++t)
    if (rho.at(t % k, t)) expl[t % k] += 1;
  int64_t own_exploit = 0;
  for (int t = k * t0; t < T; ++t)
    if (rho.at(agent, t)) own_exploit += 1;

  return [bids = std::move(bids), expl = std::move(expl), agent, own_exploit,
          k](const Rational& x) -> int64_t {
    std::vector<Rational> swept = bids;
    swept[agent] = x;
    int w = naive_winner_exact(expl, swept);
    return expl[agent] + (w == agent ? own_exploit : 0);
  };
}

}  // namespace mabmech
