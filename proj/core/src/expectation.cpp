#include "mabmech/expectation.hpp"

#include <cmath>

#include "mabmech/parallel.hpp"
#include "mabmech/rng.hpp"

namespace mabmech {

void SymbolicBudget::check_consistent(int k, int T) const {
  if (k * T > max_kT || (int64_t{1} << T) > max_histories)
    throw BudgetError("symbolic path: 2^T history enumeration exceeds budget");
}

void SymbolicBudget::check_full(int k, int T) const {
  double paths = std::pow(2.0 * k, T);
  if (k * T > max_kT || paths > static_cast<double>(max_histories))
    throw BudgetError("symbolic path: (2k)^T history enumeration exceeds budget");
}

RationalPoly history_probability_polynomial(const AllocationRule& proto, const BidProfile& bids,
                                            const History& h) {
  auto rule = proto.clone();
  if (!rule->is_deterministic())
    throw ConfigError("history_probability_polynomial: rule must be deterministic");
  int T = h.rounds();
  if (T != rule->horizon()) throw ConfigError("history_probability_polynomial: horizon mismatch");

  RationalPoly poly = RationalPoly::constant(rule->agents(), Rational(1));
  rule->start(bids);
  for (int t = 0; t < T; ++t) {
    int x = rule->next(t);
    if (x != h.shown[t]) return RationalPoly(rule->agents());  // Pr factor is 0
    if (h.clicked[t])
      poly.mul_var(x);
    else
      poly.mul_one_minus_var(x);
    rule->observe(t, x, h.clicked[t]);
  }
  return poly;
}

template <class Coef>
CtrPolynomial<Coef> expected_clicks_polynomial(const AllocationRule& proto,
                                               const BidProfile& bids, int agent,
                                               const SymbolicBudget& budget) {
  int k = proto.agents(), T = proto.horizon();
  budget.check_consistent(k, T);
  if (!proto.is_deterministic())
    throw ConfigError("expected_clicks_polynomial: rule must be deterministic");

  CtrPolynomial<Coef> total(k);
  // One consistent history per click pattern: replay the rule feeding the
  // pattern bit for whichever agent it selects.
  for (uint64_t pattern = 0; pattern < (uint64_t{1} << T); ++pattern) {
    auto rule = proto.clone();
    rule->start(bids);
    CtrPolynomial<Coef> prob = CtrPolynomial<Coef>::constant(k, Coef(1));
    int64_t clicks_i = 0;
    for (int t = 0; t < T; ++t) {
      int x = rule->next(t);
      bool y = (pattern >> t) & 1;
      if (y)
        prob.mul_var(x);
      else
        prob.mul_one_minus_var(x);
      if (y && x == agent) ++clicks_i;
      rule->observe(t, x, y);
    }
    prob.scale(Coef(clicks_i));
    total += prob;
  }
  return total;
}

template CtrPolynomial<Rational> expected_clicks_polynomial<Rational>(const AllocationRule&,
                                                                      const BidProfile&, int,
                                                                      const SymbolicBudget&);
template CtrPolynomial<double> expected_clicks_polynomial<double>(const AllocationRule&,
                                                                  const BidProfile&, int,
                                                                  const SymbolicBudget&);

DoublePoly myerson_expected_payment_polynomial(const AllocationRule& proto,
                                               const BidProfile& bids, int agent, double gamma,
                                               double tol, const SymbolicBudget& budget) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ConfigError("myerson_expected_payment_polynomial: gamma must lie in (0,1)");
  double b_i = bids[agent];

  auto clicks_poly = [&](double x) {
    return expected_clicks_polynomial<double>(proto, bids.with_bid(agent, x), agent, budget);
  };

  // Locate the jumps of the polynomial-valued step function x -> C_i(x).
  struct Interval {
    double lo, hi;
    DoublePoly plo, phi;
  };
  std::vector<Interval> work{{0.0, b_i, clicks_poly(0.0), clicks_poly(b_i)}};
  std::vector<std::pair<double, double>> jumps;
  while (!work.empty()) {
    Interval iv = std::move(work.back());
    work.pop_back();
    if (iv.plo == iv.phi) continue;
    if (iv.hi - iv.lo <= tol) {
      jumps.emplace_back(iv.lo, iv.hi);
      continue;
    }
    double mid = 0.5 * (iv.lo + iv.hi);
    DoublePoly pmid = clicks_poly(mid);
    work.push_back({iv.lo, mid, std::move(iv.plo), pmid});
    work.push_back({mid, iv.hi, std::move(pmid), std::move(iv.phi)});
  }
  std::sort(jumps.begin(), jumps.end());

  int k = proto.agents();
  DoublePoly integral(k);
  double cursor = 0.0;
  for (const auto& [jlo, jhi] : jumps) {
    if (jlo > cursor) {
      DoublePoly seg = clicks_poly(0.5 * (cursor + jlo));
      seg.scale(jlo - cursor);
      integral += seg;
    }
    DoublePoly bracket = clicks_poly(jlo);
    bracket += clicks_poly(jhi);
    bracket.scale(0.5 * (jhi - jlo));
    integral += bracket;
    cursor = jhi;
  }
  if (cursor < b_i) {
    DoublePoly seg = clicks_poly(0.5 * (cursor + b_i));
    seg.scale(b_i - cursor);
    integral += seg;
  }

  DoublePoly out = clicks_poly(b_i);
  out.scale(b_i);
  out -= integral;
  out.scale(gamma);
  return out;
}

bool relevant_history_member(const std::vector<int>& exponents, int /*agent*/, const History& h) {
  int pos = 0;
  for (int i = 0; i < static_cast<int>(exponents.size()); ++i) {
    for (int rep = 0; rep < exponents[i]; ++rep) {
      if (pos >= h.rounds()) return false;  // deg(Q) > T
      if (h.shown[pos] != i || !h.clicked[pos]) return false;
      ++pos;
    }
  }
  return true;
}

double monomial_payment(const History& h, int agent, const DoublePoly& expected_payment,
                        double gamma, MixtureBranch branch) {
  if (branch == MixtureBranch::Main) return 0.0;
  double k = static_cast<double>(expected_payment.vars());
  double total = 0.0;
  for (const auto& [expo, coef] : expected_payment.terms()) {
    if (!relevant_history_member(expo, agent, h)) continue;
    int deg = 0;
    for (int a : expo) deg += a;
    total += std::pow(k, deg) * coef;
  }
  return total / (1.0 - gamma);
}

ExpectedPaymentReport verify_expected_payment(const AllocationRule& proto,
                                              const BidProfile& bids, double gamma,
                                              const std::vector<double>& mu, int64_t trials,
                                              uint64_t seed, int threads) {
  int k = proto.agents(), T = proto.horizon();
  if (static_cast<int>(mu.size()) != k)
    throw ConfigError("verify_expected_payment: mu dimension mismatch");
  if (trials < 1) throw ConfigError("verify_expected_payment: need trials >= 1");

  std::vector<DoublePoly> pm;
  pm.reserve(k);
  for (int i = 0; i < k; ++i)
    pm.push_back(myerson_expected_payment_polynomial(proto, bids, i, gamma));

  std::vector<std::vector<double>> pay(k, std::vector<double>(trials));
  parallel_for(trials, threads, [&](int64_t trial) {
    auto u = static_cast<uint64_t>(trial);
    bool main_branch = u01(key_hash(seed, u, 0xb7a2c4)) < gamma;
    History h;
    if (main_branch) {
      auto rule = proto.clone();
      rule->start(bids);
      for (int t = 0; t < T; ++t) {
        int x = rule->next(t);
        bool y = bernoulli(mu[x], seed, u, static_cast<uint64_t>(x), static_cast<uint64_t>(t));
        rule->observe(t, x, y);
        h.push(x, y);
      }
    } else {
      for (int t = 0; t < T; ++t) {
        int x = static_cast<int>(u01(key_hash(seed, u, 0xa9e17, static_cast<uint64_t>(t))) * k);
        x = std::min(x, k - 1);
        bool y = bernoulli(mu[x], seed, u, static_cast<uint64_t>(x), static_cast<uint64_t>(t));
        h.push(x, y);
      }
    }
    MixtureBranch branch = main_branch ? MixtureBranch::Main : MixtureBranch::Explore;
    for (int i = 0; i < k; ++i) pay[i][trial] = monomial_payment(h, i, pm[i], gamma, branch);
  });

  ExpectedPaymentReport report;
  report.trials = trials;
  for (int i = 0; i < k; ++i) {
    AgentZScore zs;
    double sum = 0.0;
    for (double p : pay[i]) sum += p;
    zs.mc_mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (double p : pay[i]) ss += (p - zs.mc_mean) * (p - zs.mc_mean);
    zs.mc_se = trials > 1 ? std::sqrt(ss / (static_cast<double>(trials - 1) *
                                            static_cast<double>(trials)))
                          : 0.0;
    zs.target = pm[i].eval(mu);
    zs.z = zs.mc_se > 0 ? (zs.mc_mean - zs.target) / zs.mc_se : 0.0;
    report.agents.push_back(zs);
  }
  return report;
}

}  // namespace mabmech
