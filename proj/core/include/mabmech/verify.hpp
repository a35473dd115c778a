#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mabmech/allocation.hpp"
#include "mabmech/mechanism.hpp"
#include "mabmech/rational.hpp"

namespace mabmech {

// Finite stand-in for the definitions' "for all b": one sorted positive value
// list per agent.
struct BidGrid {
  std::vector<std::vector<double>> per_agent;

  static BidGrid uniform(int k, std::vector<double> values);
  int agents() const { return static_cast<int>(per_agent.size()); }
  int64_t profile_count() const;
  std::vector<double> profile(int64_t index) const;  // mixed-radix decode
};

struct EnumerationBudget {
  int max_kT = 16;
  static constexpr int hard_cap = 22;

  void check(int k, int T) const {
    int kt = k * T;
    if (kt > std::min(max_kT, hard_cap))
      throw BudgetError("enumeration budget exceeded: k*T = " + std::to_string(kt));
  }
};

// A replayable witness of a failed structural property.
struct Counterexample {
  enum class Kind { Monotonicity, Separation, WeakSeparation, Truthfulness, Normalization };

  Kind kind{};
  int k = 0, T = 0;
  std::vector<double> bids;      // profile at which the violation occurs
  std::vector<double> bids_alt;  // second profile witnessing bid-dependence
  int agent = -1;                // agent whose property fails
  double alt_bid = 0.0;          // raised bid / deviation bid, when applicable
  double value = 0.0;            // true value (truthfulness only)
  int round = -1;                // influential or non-monotone round
  int influenced_round = -1;     // separation kinds only
  Realization realization{1, 1};
  std::string detail;            // the two conflicting outcomes, for humans

  std::string serialize() const;
  static Counterexample parse(const std::string& text);
};

const char* to_string(Counterexample::Kind kind);

// One influence fact: flipping the shown agent's click at `round` changes the
// allocation at influenced_round from agent_base to agent_flipped.
struct InfluenceRecord {
  int round;
  int influencing_agent;
  int influenced_round;
  int agent_base;     // A(b; rho; t')
  int agent_flipped;  // A(b; rho+1(j,t); t')
};

std::vector<InfluenceRecord> find_influential_rounds(const AllocationRule& proto,
                                                     const BidProfile& bids,
                                                     const Realization& rho);

// Round t is (b;rho)-secured from `agent` iff raising that agent's bid to any
// grid value above b_agent leaves the round-t allocation unchanged.
bool is_secured(const AllocationRule& proto, const BidProfile& bids, const Realization& rho,
                int round, int agent, const BidGrid& grid);

// Round t is bid-independent w.r.t. rho iff the round-t allocation is constant
// over the whole grid product.
bool check_bid_independent(const AllocationRule& proto, const Realization& rho, int round,
                           const BidGrid& grid);

// Definition-level checkers, exhaustive over all realizations and the grid.
// nullopt means the property holds; otherwise the lexicographically first
// counterexample (realization index, then bid profile, then round, agent).
std::optional<Counterexample> check_pointwise_monotone(const AllocationRule& proto, int k, int T,
                                                       const BidGrid& grid,
                                                       const EnumerationBudget& budget = {});
std::optional<Counterexample> check_exploration_separated(const AllocationRule& proto, int k,
                                                          int T, const BidGrid& grid,
                                                          const EnumerationBudget& budget = {});
std::optional<Counterexample> check_weakly_separated(const AllocationRule& proto, int k, int T,
                                                     const BidGrid& grid,
                                                     const EnumerationBudget& budget = {});

// Mechanism oracle for the exhaustive game-theoretic checks: returns per-agent
// clicks and payments at a full bid profile. Num is Rational when payments
// are exact and double otherwise.
template <class Num>
struct MechanismOutcomeOf {
  std::vector<int64_t> clicks;
  std::vector<Num> payments;
};
template <class Num>
using MechanismOracle =
    std::function<MechanismOutcomeOf<Num>(const std::vector<Num>& bids, const Realization&)>;

// U_i(v; v, b_-i) >= U_i(v; b, b_-i) for every realization, agent, true value
// v in the grid, deviation b in the grid, and opponent profile from the grid.
// Comparisons are exact for Num = Rational (tolerance zero).
template <class Num>
std::optional<Counterexample> check_truthful_exhaustive(const MechanismOracle<Num>& mech, int k,
                                                        int T,
                                                        const std::vector<Num>& value_grid,
                                                        const EnumerationBudget& budget = {});

// 0 <= P_i <= b_i * C_i over all realizations and grid profiles.
template <class Num>
std::optional<Counterexample> check_normalized(const MechanismOracle<Num>& mech, int k, int T,
                                               const std::vector<Num>& bid_grid,
                                               const EnumerationBudget& budget = {});

// ---- Monte-Carlo checkers for randomized mechanisms ----

struct WeakTruthRow {
  int realization_index;
  int agent;
  double deviation_bid;
  double mean_gain;  // E_seed[U(truthful) - U(deviation)]
  double se;
  bool flagged;  // mean_gain < -3 se
};

struct WeakTruthReport {
  std::vector<WeakTruthRow> rows;
  int64_t seeds = 0;
  // Monte-Carlo evidence, not proof: rows are flagged at 3 standard errors.
  bool any_flagged() const {
    for (const auto& r : rows)
      if (r.flagged) return true;
    return false;
  }
};

// For each fixture realization and each grid deviation of each agent,
// estimates the paired utility difference over the mechanism's random seed.
WeakTruthReport check_weakly_truthful_mc(const Mechanism& proto,
                                         const std::vector<double>& values,
                                         const std::vector<double>& deviation_grid,
                                         const std::vector<Realization>& fixtures,
                                         int64_t seeds, uint64_t base_seed, int threads = 1);

struct MonotoneMcPoint {
  double bid;
  double mean_clicks;
  double se;
};

struct MonotoneMcReport {
  int agent = 0;
  std::vector<MonotoneMcPoint> points;
  std::vector<int> flagged_steps;  // index j: points[j] -> points[j+1] drops > 3 SE
  bool any_flagged() const { return !flagged_steps.empty(); }
};

// E[C_agent] across a grid of that agent's bids, everything else fixed.
MonotoneMcReport check_monotone_in_expectation_mc(const AllocationRule& proto,
                                                  const StochasticInstance& inst, int agent,
                                                  const std::vector<double>& bid_grid,
                                                  int64_t trials, uint64_t seed,
                                                  int threads = 1);

// ---- replay ----

// Reruns the stored inputs through the matching structural checker predicate
// and reports whether the violation reproduces. Truthfulness/normalization
// counterexamples replay against the mechanism oracle instead.
bool replay_counterexample(const Counterexample& cex, const AllocationRule& proto);
bool replay_counterexample(const Counterexample& cex, const MechanismOracle<double>& mech);

}  // namespace mabmech
