#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mabmech/allocation.hpp"
#include "mabmech/instances.hpp"
#include "mabmech/naive.hpp"
#include "mabmech/regret.hpp"
#include "mabmech/rng.hpp"
#include "mabmech/ucb1.hpp"

using namespace mabmech;

TEST_CASE("realization round trips rows and indices") {
  Realization rho = Realization::from_rows({"1010", "0110"});
  CHECK(rho.agents() == 2);
  CHECK(rho.rounds() == 4);
  CHECK(rho.at(0, 0));
  CHECK_FALSE(rho.at(0, 1));
  CHECK(rho.to_rows() == std::vector<std::string>{"1010", "0110"});
  CHECK(Realization::from_index(2, 4, rho.to_index()) == rho);
  CHECK_THROWS_AS(Realization::from_rows({"10", "1"}), ConfigError);
  CHECK_THROWS_AS(Realization::from_rows({"102"}), ConfigError);
}

TEST_CASE("bid profile validation") {
  CHECK_THROWS_AS(BidProfile({1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(BidProfile({}), ConfigError);
  BidProfile b({1.0, 2.0});
  CHECK(b.with_bid(0, 0.0)[0] == 0.0);  // counterfactual sweep may hit zero
  CHECK_THROWS_AS(b.with_bid(1, -1.0), ConfigError);
}

TEST_CASE("run_allocation constant rule reads the realization verbatim") {
  Realization rho = Realization::from_rows({"1010", "0110"});
  ConstantRule rule(2, 4, 0);
  History h = run_allocation(rule, BidProfile({1, 1}), rho);
  for (int t = 0; t < 4; ++t) {
    CHECK(h.shown[t] == 0);
    CHECK((h.clicked[t] != 0) == rho.at(0, t));
  }
}

TEST_CASE("run_allocation single agent ignores bids") {
  Realization rho = Realization::from_rows({"101"});
  NaiveRule rule(1, 3, 1);
  History h = run_allocation(rule, BidProfile({7.0}), rho);
  CHECK(h.shown == std::vector<int32_t>{0, 0, 0});
}

TEST_CASE("run_allocation rejects dimension mismatches") {
  Realization rho(2, 4);
  ConstantRule rule(2, 4, 0);
  CHECK_THROWS_AS(run_allocation(rule, BidProfile({1.0}), rho), ConfigError);
  ConstantRule wrong_T(2, 5, 0);
  CHECK_THROWS_AS(run_allocation(wrong_T, BidProfile({1, 1}), rho), ConfigError);
}

TEST_CASE("naive hand simulation, k=2 T=4 T0=1") {
  // Exploration: round 0 -> agent 0 (clicked), round 1 -> agent 1 (clicked).
  // Products 1*1 vs 1*2: agent 1 wins and plays rounds 2,3.
  Realization rho = Realization::from_rows({"1010", "0110"});
  NaiveRule rule(2, 4, 1);
  History h = run_allocation(rule, BidProfile({1, 2}), rho);
  CHECK(h.shown == std::vector<int32_t>{0, 1, 1, 1});
  CHECK(h.clicked == std::vector<uint8_t>{1, 1, 1, 0});
}

TEST_CASE("click_allocation counts") {
  History h;
  h.push(0, true);
  h.push(0, false);
  h.push(1, true);
  ClickAllocation a = click_allocation(h, 2);
  CHECK(a.clicks == std::vector<int64_t>{1, 1});
  CHECK(a.impressions == std::vector<int64_t>{2, 1});

  History zeros;
  for (int t = 0; t < 5; ++t) zeros.push(t % 2, false);
  ClickAllocation z = click_allocation(zeros, 2);
  CHECK(z.clicks == std::vector<int64_t>{0, 0});

  History saturated;
  for (int t = 0; t < 7; ++t) saturated.push(0, true);
  CHECK(click_allocation(saturated, 2).clicks[0] == 7);
}

TEST_CASE("online causality: future flips never change the past") {
  uint64_t seed = 123;
  for (int trial = 0; trial < 20; ++trial) {
    Realization rho = Realization::bernoulli({0.6, 0.4}, 8, seed, trial);
    Ucb1Rule ucb(2, 8);
    NaiveRule naive(2, 8, 2);
    for (AllocationRule* rule : {static_cast<AllocationRule*>(&ucb),
                                 static_cast<AllocationRule*>(&naive)}) {
      BidProfile bids({1.5, 1.0});
      History base = run_allocation(*rule, bids, rho);
      for (int cut = 1; cut < 8; ++cut) {
        Realization mut = rho;
        for (int i = 0; i < 2; ++i)
          for (int t = cut; t < 8; ++t) mut.flip(i, t);
        History alt = run_allocation(*rule, bids, mut);
        for (int t = 0; t < cut; ++t) CHECK(alt.shown[t] == base.shown[t]);
      }
    }
  }
}

TEST_CASE("regret_stochastic exact zeros") {
  // Single agent: zero regret for any rule.
  StochasticInstance solo(1, 50, {0.3}, {1.0}, BidProfile({1.0}), 1.0);
  NaiveRule rule(1, 50, 1);
  RegretEstimate est = regret_stochastic(rule, solo, 5, 99);
  CHECK(est.mean == 0.0);
  CHECK(est.se == 0.0);

  // A rule pinned to argmax mu_i v_i is its own benchmark.
  StochasticInstance inst(2, 100, {0.7, 0.5}, {1.0, 1.0}, BidProfile({1, 1}), 1.0);
  ConstantRule best(2, 100, 0);
  CHECK(regret_stochastic(best, inst, 10, 5).mean == 0.0);
}

TEST_CASE("regret_stochastic self-consistency across seeds") {
  StochasticInstance inst =
      make_lower_bound_instance(LowerBoundKind::PerturbedCtr, 0, 2, 1000, 1.0);
  NaiveRule rule(2, 1000);
  RegretEstimate a = regret_stochastic(rule, inst, 200, 11, 2);
  RegretEstimate b = regret_stochastic(rule, inst, 200, 22, 2);
  CHECK(a.mean > 0.0);
  CHECK(std::abs(a.mean - b.mean) < 3.0 * std::sqrt(a.se * a.se + b.se * b.se) + 1e-9);
}

TEST_CASE("regret_stochastic is reproducible and thread-count independent") {
  StochasticInstance inst(2, 200, {0.6, 0.5}, {1.0, 0.8}, BidProfile({1.0, 0.8}), 1.0);
  Ucb1Rule rule(2, 200);
  RegretEstimate a = regret_stochastic(rule, inst, 64, 7, 1);
  RegretEstimate b = regret_stochastic(rule, inst, 64, 7, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.se == b.se);
}

TEST_CASE("regret_adversarial basics") {
  Realization zeros(2, 10);
  NaiveRule rule(2, 10, 1);
  CHECK(regret_adversarial(rule, BidProfile({1, 1}), {1, 1}, zeros, 1, 0) == 0.0);

  // Hindsight-best agent as a constant rule has zero adversarial regret.
  Realization rho = Realization::from_rows({"1111100000", "0000011111"});
  ConstantRule best(2, 10, 0);
  CHECK(regret_adversarial(best, BidProfile({1, 1}), {2.0, 1.0}, rho, 1, 0) == 0.0);
}

TEST_CASE("lower bound instances") {
  StochasticInstance i1 = make_lower_bound_instance(LowerBoundKind::PerturbedCtr, 0, 2, 1000, 1.0);
  double eps = std::cbrt(2.0) / 10.0;
  CHECK(i1.ctrs[0] == doctest::Approx(0.5 + eps).epsilon(1e-12));
  CHECK(i1.ctrs[1] == 0.5);
  CHECK(i1.values == std::vector<double>{1.0, 1.0});
  CHECK(i1.bids.values() == std::vector<double>{1.0, 1.0});

  StochasticInstance j2 = make_lower_bound_instance(LowerBoundKind::SkewedBids, 1, 2, 1000, 1.0);
  CHECK(j2.ctrs == std::vector<double>{0.5, 0.5});
  CHECK(j2.values == std::vector<double>{0.5, 1.0});

  // k = T = 8 gives eps = 1 > 1/2.
  CHECK_THROWS_AS(make_lower_bound_instance(LowerBoundKind::PerturbedCtr, 0, 8, 8, 1.0),
                  ConfigError);
}

TEST_CASE("perturbed-ctr instance deviates in exactly one coordinate") {
  for (int agent = 0; agent < 3; ++agent) {
    StochasticInstance inst =
        make_lower_bound_instance(LowerBoundKind::PerturbedCtr, agent, 3, 3000, 2.0);
    for (int j = 0; j < 3; ++j) {
      if (j == agent)
        CHECK(inst.ctrs[j] - 0.5 == doctest::Approx(lower_bound_epsilon(3, 3000)).epsilon(1e-12));
      else
        CHECK(inst.ctrs[j] == 0.5);
    }
  }
}

TEST_CASE("delta gap instances") {
  StochasticInstance d = make_delta_gap_instance(0.25, 2, 100, 1.0);
  CHECK(d.ctrs == std::vector<double>{0.75, 0.5});
  CHECK(d.values == std::vector<double>{1.0, 1.0});
  CHECK(d.ctrs[0] * d.values[0] - d.ctrs[1] * d.values[1] == doctest::Approx(0.25));

  StochasticInstance d3 = make_delta_gap_instance(0.1, 3, 100, 1.0);
  CHECK(d3.ctrs == std::vector<double>{0.6, 0.5, 0.5});

  CHECK_THROWS_AS(make_delta_gap_instance(0.0, 2, 100, 1.0), ConfigError);
  CHECK_THROWS_AS(make_delta_gap_instance(0.26, 2, 100, 1.0), ConfigError);
}
