#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mabmech/naive.hpp"
#include "mabmech/rng.hpp"

using namespace mabmech;

TEST_CASE("naive_t0 formula") {
  // ceil(2^{-2/3} * 100 * (ln 1000)^{1/3}) = ceil(120.0098...) = 121
  CHECK(naive_t0(2, 1000) == 121);
  CHECK(naive_t0(2, 4) == 2);  // clamped to floor(T/k)
  CHECK(naive_t0(2, 3) == 1);
  CHECK_THROWS_AS(naive_t0(2, 1), ConfigError);
}

TEST_CASE("zero-click agent loses the exploitation slot") {
  // k=2, T0=1: agent 0 clicked, agent 1 not; bids (1,5): 1*1 > 0*5.
  Realization rho = Realization::from_rows({"1000", "0000"});
  NaiveRule rule(2, 4, 1);
  History h = run_allocation(rule, BidProfile({1, 5}), rho);
  CHECK(h.shown == std::vector<int32_t>{0, 1, 0, 0});
}

TEST_CASE("worked payment example: c=(5,3), b=(2,4), seven exploitation clicks") {
  int k = 2, t0 = 5, T = 20;
  Realization rho(k, T);
  // Exploration rounds 0..9 alternate agents; give agent 0 all five clicks,
  // agent 1 three clicks.
  for (int t = 0; t < 10; t += 2) rho.set(0, t, true);
  rho.set(1, 1, true);
  rho.set(1, 3, true);
  rho.set(1, 5, true);
  // Winner is agent 1 (12 > 10); give her 7 clicks over the 10 remaining rounds.
  for (int t = 10; t < 17; ++t) rho.set(1, t, true);

  NaiveRule rule(k, T, t0);
  BidProfile bids({2, 4});
  History h = run_allocation(rule, bids, rho);
  CHECK(h.shown[10] == 1);

  std::vector<double> pay = naive_payments(h, bids, t0);
  CHECK(pay[0] == 0.0);
  CHECK(pay[1] == doctest::Approx(70.0 / 3.0).epsilon(1e-12));

  std::vector<Rational> rb = {Rational(2), Rational(4)};
  std::vector<Rational> exact = naive_payments_exact(h, rb, t0);
  CHECK(exact[1] == Rational(70, 3));
  CHECK(exact[0] == Rational(0));
}

TEST_CASE("winner with zero exploitation clicks pays nothing") {
  Realization rho = Realization::from_rows({"100000", "010000"});
  NaiveRule rule(2, 6, 1);
  BidProfile bids({3, 1});
  History h = run_allocation(rule, bids, rho);
  CHECK(h.shown[2] == 0);
  std::vector<double> pay = naive_payments(h, bids, 1);
  CHECK(pay == std::vector<double>{0.0, 0.0});
}

TEST_CASE("degenerate: no exploration clicks at all") {
  Realization rho(2, 6);
  NaiveRule rule(2, 6, 1);
  BidProfile bids({3, 1});
  History h = run_allocation(rule, bids, rho);
  std::vector<double> pay = naive_payments(h, bids, 1);
  CHECK(pay == std::vector<double>{0.0, 0.0});
}

TEST_CASE("exploration allocation never depends on bids") {
  Realization rho = Realization::bernoulli({0.5, 0.5, 0.5}, 9, 4, 0);
  NaiveRule rule(3, 9, 2);
  History a = run_allocation(rule, BidProfile({1, 1, 1}), rho);
  History b = run_allocation(rule, BidProfile({9, 0.25, 3}), rho);
  for (int t = 0; t < 6; ++t) CHECK(a.shown[t] == b.shown[t]);
}

TEST_CASE("exploitation depends on bids only through the products") {
  // c = (1, 1); scaling both bids preserves the winner.
  Realization rho = Realization::from_rows({"1000", "0100"});
  NaiveRule rule(2, 4, 1);
  History a = run_allocation(rule, BidProfile({2, 3}), rho);
  History b = run_allocation(rule, BidProfile({4, 6}), rho);
  CHECK(a.shown == b.shown);
  CHECK(a.shown[2] == 1);
}

TEST_CASE("payments reject a history that does not match the rule") {
  History bogus;
  for (int t = 0; t < 4; ++t) bogus.push(0, false);  // not round-robin
  CHECK_THROWS_AS(naive_payments(bogus, BidProfile({1, 1}), 1), ConfigError);
}

TEST_CASE("exact runner agrees with the double rule away from ties") {
  uint64_t seed = 77;
  for (int trial = 0; trial < 50; ++trial) {
    Realization rho = Realization::bernoulli({0.5, 0.6}, 6, seed, trial);
    // Dyadic bids: double products are exact, so the two paths must agree.
    double b0 = 0.25 * (1 + (key_hash(seed, trial, 1) % 8));
    double b1 = 0.25 * (1 + (key_hash(seed, trial, 2) % 8));
    NaiveRule rule(2, 6, 1);
    History h = run_allocation(rule, BidProfile({b0, b1}), rho);
    std::vector<Rational> rb = {Rational::from_double_exact(b0),
                                Rational::from_double_exact(b1)};
    CHECK(naive_run_exact(rb, rho, 1) == h);
  }
}
