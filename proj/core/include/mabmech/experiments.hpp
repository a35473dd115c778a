#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mabmech/allocation.hpp"
#include "mabmech/types.hpp"

namespace mabmech {

// Known rule names: naive | ucb1 | elimination | psim | constant.
std::unique_ptr<AllocationRule> make_rule(const std::string& name, int k, int T, double v_max,
                                          uint64_t seed);
const std::vector<std::string>& known_rules();

struct SweepSpec {
  std::vector<std::string> rules;
  std::vector<int> t_list;  // strictly increasing
  int k = 2;
  double v_max = 1.0;
  int64_t trials = 200;
  uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

// One estimated point: worst regret over the named instance family.
struct SweepPoint {
  std::string rule;
  std::string instance;  // family member attaining the max
  int k;
  int T;
  int64_t trials;
  uint64_t seed;
  double regret;
  double se;
};

struct ScalingFit {
  std::string rule;
  double exponent = 0.0;
  double exponent_se = 0.0;
  double intercept = 0.0;
  int points = 0;
  bool ok = false;  // >= 4 usable points, all regrets positive
};

// Worst-case regret over the 2k lower-bound instances {I_i, J_i}, per rule
// and horizon; eps inside I_i is recomputed for every T. Click streams are
// keyed by (seed, T, instance, trial) only, so rules see common random
// numbers.
std::vector<SweepPoint> regret_scaling_sweep(const SweepSpec& spec);

// Least squares of ln(regret) on ln(T) for one rule's points.
ScalingFit fit_scaling(const std::string& rule, const std::vector<SweepPoint>& points);

struct RatioRow {
  std::string rule;
  int t_lo, t_hi;
  double regret_lo, se_lo;
  double regret_hi, se_hi;
  double ratio;
  double ratio_se;
  bool low_power;  // relative SEs too wide to resolve the ratio
};

// R(T_{j+1}) / R(T_j) per rule on the delta-gap instance.
std::vector<RatioRow> delta_gap_sweep(const SweepSpec& spec, double delta);

struct UnderbidPoint {
  double shading;
  double bid;
  double mean_utility;
  double se;
};

struct UnderbidReport {
  std::vector<UnderbidPoint> points;
  double best_shading = 1.0;
  double gain_over_truthful = 0.0;  // utility(best) - utility(1.0)
  double gain_se = 0.0;
};

// Expected utility of agent 0 under the UCB1 mechanism as her bid is shaded
// to s * v_0, everyone else truthful. Requires mu_0 v_0 > mu_1 v_1.
UnderbidReport ucb1_underbid_experiment(const std::vector<double>& mu,
                                        const std::vector<double>& values, int T,
                                        const std::vector<double>& shading_grid, int64_t trials,
                                        uint64_t seed, int threads = 1);

struct AdversarialPoint {
  std::string fixture;
  int T;
  double regret;
};

struct AdversarialBenchReport {
  std::vector<AdversarialPoint> points;
  double exponent = 0.0;     // fit over per-T worst fixture
  double exponent_se = 0.0;
  double envelope_constant = 0.0;  // max regret / ((k ln k)^{1/3} T^{2/3} v_max)
};

// PSim on fixed adversarial fixtures (constant-best, alternating, one-switch,
// all-zero), averaged over rule seeds.
AdversarialBenchReport psim_adversarial_bench(const std::vector<int>& t_list, int k,
                                              double v_max, int seeds, uint64_t base_seed,
                                              int threads = 1);

// Fixture generators shared with tests and the CLI.
Realization fixture_constant_best(int k, int T);
Realization fixture_alternating(int k, int T);
Realization fixture_one_switch(int k, int T);
Realization fixture_all_zero(int k, int T);

// ---- CSV emission ----

// Numbers are printed with %.12g and '.' decimal separator.
std::string format_number(double x);

std::string points_csv(const std::vector<SweepPoint>& points);           // regret sweep
std::string fits_csv(const std::vector<ScalingFit>& fits);               // scaling fits
std::string ratios_csv(const std::vector<RatioRow>& rows);               // delta-gap ratios
std::string underbid_csv(const UnderbidReport& report);

}  // namespace mabmech
