#pragma once

#include <memory>

#include "mabmech/allocation.hpp"
#include "mabmech/naive.hpp"
#include "mabmech/psim.hpp"
#include "mabmech/types.hpp"
#include "mabmech/ucb1.hpp"

namespace mabmech {

// An allocation rule together with its payment rule; run() produces the full
// per-run outcome (payments included, utilities left for attach_utilities).
class Mechanism {
 public:
  virtual ~Mechanism() = default;
  virtual int agents() const = 0;
  virtual int horizon() const = 0;
  virtual MechanismOutcome run(const BidProfile& bids, const Realization& rho) = 0;
  virtual std::unique_ptr<Mechanism> clone() const = 0;
  virtual bool is_deterministic() const { return true; }
  virtual void reseed(uint64_t) {}
};

class NaiveMechanism final : public Mechanism {
 public:
  NaiveMechanism(int k, int T) : rule_(k, T) {}
  NaiveMechanism(int k, int T, int t0) : rule_(k, T, t0) {}

  int agents() const override { return rule_.agents(); }
  int horizon() const override { return rule_.horizon(); }
  MechanismOutcome run(const BidProfile& bids, const Realization& rho) override;
  std::unique_ptr<Mechanism> clone() const override {
    return std::make_unique<NaiveMechanism>(*this);
  }

 private:
  NaiveRule rule_;
};

// UCB1 with the per-round price charged on click.
class Ucb1Mechanism final : public Mechanism {
 public:
  Ucb1Mechanism(int k, int T) : k_(k), T_(T) {}

  int agents() const override { return k_; }
  int horizon() const override { return T_; }
  MechanismOutcome run(const BidProfile& bids, const Realization& rho) override;
  std::unique_ptr<Mechanism> clone() const override {
    return std::make_unique<Ucb1Mechanism>(*this);
  }

 private:
  int k_, T_;
};

// PSim with the per-click exploitation price of its weakly truthful payment
// rule; exploration rounds are free.
class PsimMechanism final : public Mechanism {
 public:
  PsimMechanism(int k, int T, double v_max, uint64_t seed)
      : rule_(k, T, v_max, seed) {}

  int agents() const override { return rule_.agents(); }
  int horizon() const override { return rule_.horizon(); }
  MechanismOutcome run(const BidProfile& bids, const Realization& rho) override;
  std::unique_ptr<Mechanism> clone() const override {
    return std::make_unique<PsimMechanism>(*this);
  }
  bool is_deterministic() const override { return false; }
  void reseed(uint64_t seed) override { rule_.reseed(seed); }

 private:
  PsimRule rule_;
};

// Any allocation rule with zero payments. Trivially truthful when the
// allocation ignores bids; used as a baseline by checkers and tests.
class ZeroPaymentMechanism final : public Mechanism {
 public:
  explicit ZeroPaymentMechanism(std::unique_ptr<AllocationRule> rule)
      : rule_(std::move(rule)) {}
  ZeroPaymentMechanism(const ZeroPaymentMechanism& o) : rule_(o.rule_->clone()) {}

  int agents() const override { return rule_->agents(); }
  int horizon() const override { return rule_->horizon(); }
  MechanismOutcome run(const BidProfile& bids, const Realization& rho) override;
  std::unique_ptr<Mechanism> clone() const override {
    return std::make_unique<ZeroPaymentMechanism>(*this);
  }
  bool is_deterministic() const override { return rule_->is_deterministic(); }
  void reseed(uint64_t seed) override { rule_->reseed(seed); }

 private:
  std::unique_ptr<AllocationRule> rule_;
};

}  // namespace mabmech
