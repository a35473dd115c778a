#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mabmech {

// Bad parameters, dimension mismatches, malformed files.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Two internal computation routes disagreed (e.g. closed form vs quadrature).
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Full k x T table of would-be clicks, including bits for agents that are
// never shown. rho(i, t) == 1 means agent i would be clicked if shown at
// round t. Agents and rounds are 0-based throughout the library.
class Realization {
 public:
  Realization(int k, int T)
      : k_(check_dims(k, T)), T_(T), bits_(static_cast<size_t>(k) * T, 0) {}

  int agents() const { return k_; }
  int rounds() const { return T_; }

  bool at(int agent, int t) const { return bits_[index(agent, t)] != 0; }
  void set(int agent, int t, bool clicked) { bits_[index(agent, t)] = clicked ? 1 : 0; }
  void flip(int agent, int t) { bits_[index(agent, t)] ^= 1; }

  Realization flipped(int agent, int t) const {
    Realization r = *this;
    r.flip(agent, t);
    return r;
  }

  // Bits drawn i.i.d. Bernoulli(mu_i), keyed (seed, trial, agent, round).
  static Realization bernoulli(const std::vector<double>& mu, int T, uint64_t seed,
                               uint64_t trial = 0);

  // One row per agent, T characters of {0,1}.
  static Realization from_rows(const std::vector<std::string>& rows);
  std::vector<std::string> to_rows() const;

  // Row-major packing as an integer, used to enumerate small realizations.
  static Realization from_index(int k, int T, uint64_t bits);
  uint64_t to_index() const;

  bool operator==(const Realization&) const = default;

 private:
  static int check_dims(int k, int T) {
    if (k < 1 || T < 1) throw ConfigError("Realization: need k >= 1 and T >= 1");
    return k;
  }
  size_t index(int agent, int t) const {
    if (agent < 0 || agent >= k_ || t < 0 || t >= T_)
      throw ConfigError("Realization: index out of range");
    return static_cast<size_t>(agent) * T_ + t;
  }

  int k_;
  int T_;
  std::vector<uint8_t> bits_;
};

// Strictly positive bids, one per agent.
class BidProfile {
 public:
  explicit BidProfile(std::vector<double> bids) : bids_(std::move(bids)) {
    if (bids_.empty()) throw ConfigError("BidProfile: empty");
    for (double b : bids_)
      if (!(b > 0)) throw ConfigError("BidProfile: bids must be strictly positive");
  }

  int agents() const { return static_cast<int>(bids_.size()); }
  double operator[](int i) const { return bids_[i]; }
  const std::vector<double>& values() const { return bids_; }

  // Counterfactual profile with agent i's bid replaced by x >= 0. Used by
  // payment integrals and checkers, which sweep a bid down to zero.
  BidProfile with_bid(int i, double x) const {
    if (!(x >= 0)) throw ConfigError("BidProfile: counterfactual bid must be >= 0");
    BidProfile p = *this;
    p.bids_.at(i) = x;
    return p;
  }

  bool operator==(const BidProfile&) const = default;

 private:
  std::vector<double> bids_;
};

// A stochastic environment: CTR vector, private values, announced bids.
struct StochasticInstance {
  int k = 0;
  int T = 0;
  std::vector<double> ctrs;    // mu_i in [0,1]
  std::vector<double> values;  // 0 < v_i <= v_max
  BidProfile bids;
  double v_max = 1.0;

  StochasticInstance(int k_, int T_, std::vector<double> mu, std::vector<double> v,
                     BidProfile b, double vmax);
};

// The trace a mechanism actually sees: shown agent and observed click, per round.
struct History {
  std::vector<int32_t> shown;
  std::vector<uint8_t> clicked;

  int rounds() const { return static_cast<int>(shown.size()); }
  void push(int agent, bool click) {
    shown.push_back(agent);
    clicked.push_back(click ? 1 : 0);
  }
  bool operator==(const History&) const = default;
};

struct ClickAllocation {
  std::vector<int64_t> clicks;       // C_i
  std::vector<int64_t> impressions;  // times shown
};

struct MechanismOutcome {
  History history;
  ClickAllocation clicks;
  std::vector<double> payments;
  std::vector<double> utilities;  // v_i * C_i - P_i once values are supplied
};

// Fills outcome.utilities from the supplied per-click values.
void attach_utilities(MechanismOutcome& out, const std::vector<double>& values);

}  // namespace mabmech
