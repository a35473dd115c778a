#pragma once

#include <functional>
#include <memory>

#include "mabmech/types.hpp"

namespace mabmech {

// Online allocation rule. The engine calls start() once per run, then for
// each round t asks next(t) and reports the observed click via observe().
// A rule therefore only ever sees clicks of agents it actually showed, at
// rounds strictly before the current decision.
class AllocationRule {
 public:
  virtual ~AllocationRule() = default;

  virtual int agents() const = 0;
  virtual int horizon() const = 0;

  // Resets all per-run state. Deterministic rules must behave identically
  // across runs given the same bids and observations.
  virtual void start(const BidProfile& bids) = 0;
  virtual int next(int t) = 0;
  virtual void observe(int t, int agent, bool clicked) = 0;

  virtual std::unique_ptr<AllocationRule> clone() const = 0;

  virtual bool is_deterministic() const { return true; }
  // Randomized rules derive all internal randomness from this seed.
  virtual void reseed(uint64_t /*seed*/) {}
};

// click(agent, t) — realization access for the shown agent only.
using ClickFn = std::function<bool(int, int)>;

History run_allocation(AllocationRule& rule, const BidProfile& bids, const Realization& rho);
History run_allocation(AllocationRule& rule, const BidProfile& bids, const ClickFn& click, int T);

ClickAllocation click_allocation(const History& history, int k);

// ---- small concrete rules, used by tests, checkers and as CLI baselines ----

// Always shows the same agent.
class ConstantRule final : public AllocationRule {
 public:
  ConstantRule(int k, int T, int agent) : k_(k), T_(T), agent_(agent) {
    if (agent < 0 || agent >= k) throw ConfigError("ConstantRule: agent out of range");
  }
  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  void start(const BidProfile& bids) override {
    if (bids.agents() != k_) throw ConfigError("ConstantRule: bid dimension mismatch");
  }
  int next(int) override { return agent_; }
  void observe(int, int, bool) override {}
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<ConstantRule>(*this);
  }

 private:
  int k_, T_, agent_;
};

// Shows argmax_i b_i every round, ties to the lowest index. For two agents
// this is the "play 1 iff b1 >= b2" threshold rule.
class BidArgmaxRule final : public AllocationRule {
 public:
  BidArgmaxRule(int k, int T) : k_(k), T_(T) {}
  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  void start(const BidProfile& bids) override {
    if (bids.agents() != k_) throw ConfigError("BidArgmaxRule: bid dimension mismatch");
    winner_ = 0;
    for (int i = 1; i < k_; ++i)
      if (bids[i] > bids[winner_]) winner_ = i;
  }
  int next(int) override { return winner_; }
  void observe(int, int, bool) override {}
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<BidArgmaxRule>(*this);
  }

 private:
  int k_, T_;
  int winner_ = 0;
};

// Deliberately anti-monotone: shows argmin_i b_i. Exists so checker tests
// have a rule that must fail pointwise monotonicity.
class BidArgminRule final : public AllocationRule {
 public:
  BidArgminRule(int k, int T) : k_(k), T_(T) {}
  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  void start(const BidProfile& bids) override {
    if (bids.agents() != k_) throw ConfigError("BidArgminRule: bid dimension mismatch");
    winner_ = 0;
    for (int i = 1; i < k_; ++i)
      if (bids[i] < bids[winner_]) winner_ = i;
  }
  int next(int) override { return winner_; }
  void observe(int, int, bool) override {}
  std::unique_ptr<AllocationRule> clone() const override {
    return std::make_unique<BidArgminRule>(*this);
  }

 private:
  int k_, T_;
  int winner_ = 0;
};

}  // namespace mabmech
