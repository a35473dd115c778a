#include "mabmech/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mabmech/elimination.hpp"
#include "mabmech/instances.hpp"
#include "mabmech/naive.hpp"
#include "mabmech/parallel.hpp"
#include "mabmech/psim.hpp"
#include "mabmech/regret.hpp"
#include "mabmech/rng.hpp"
#include "mabmech/ucb1.hpp"

namespace mabmech {

const std::vector<std::string>& known_rules() {
  static const std::vector<std::string> names = {"naive", "ucb1", "elimination", "psim",
                                                 "constant"};
  return names;
}

std::unique_ptr<AllocationRule> make_rule(const std::string& name, int k, int T, double v_max,
                                          uint64_t seed) {
  if (name == "naive") return std::make_unique<NaiveRule>(k, T);
  if (name == "ucb1") return std::make_unique<Ucb1Rule>(k, T);
  if (name == "elimination") return std::make_unique<EliminationRule>(k, T, v_max);
  if (name == "psim") return std::make_unique<PsimRule>(k, T, v_max, seed);
  if (name == "constant") return std::make_unique<ConstantRule>(k, T, 0);
  std::string valid;
  for (const auto& n : known_rules()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown rule '" + name + "'; valid rules: " + valid);
}

void SweepSpec::validate() const {
  if (rules.empty()) throw ConfigError("sweep: no rules selected");
  if (t_list.empty()) throw ConfigError("sweep: empty T list");
  for (size_t i = 1; i < t_list.size(); ++i)
    if (t_list[i] <= t_list[i - 1]) throw ConfigError("sweep: T list must be strictly increasing");
  if (trials < 30) throw ConfigError("sweep: need at least 30 trials per point");
  if (k < 1) throw ConfigError("sweep: need k >= 1");
}

namespace {

struct FamilyMember {
  std::string name;
  StochasticInstance instance;
};

std::vector<FamilyMember> lower_bound_family(int k, int T, double v_max) {
  std::vector<FamilyMember> fam;
  for (int i = 0; i < k; ++i)
    fam.push_back({"I_" + std::to_string(i + 1),
                   make_lower_bound_instance(LowerBoundKind::PerturbedCtr, i, k, T, v_max)});
  for (int i = 0; i < k; ++i)
    fam.push_back({"J_" + std::to_string(i + 1),
                   make_lower_bound_instance(LowerBoundKind::SkewedBids, i, k, T, v_max)});
  return fam;
}

}  // namespace

std::vector<SweepPoint> regret_scaling_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepPoint> out;
  for (const auto& rule_name : spec.rules) {
    for (int T : spec.t_list) {
      auto family = lower_bound_family(spec.k, T, spec.v_max);
      SweepPoint best{};
      for (size_t fi = 0; fi < family.size(); ++fi) {
        // Stream key excludes the rule so rules share click tables.
        uint64_t stream = key_hash(spec.seed, static_cast<uint64_t>(T), fi);
        auto rule = make_rule(rule_name, spec.k, T, spec.v_max, stream);
        RegretEstimate est =
            regret_stochastic(*rule, family[fi].instance, spec.trials, stream, spec.threads);
        if (fi == 0 || est.mean > best.regret) {
          best = {rule_name, family[fi].name, spec.k,      T,
                  spec.trials, spec.seed,        est.mean, est.se};
        }
      }
      out.push_back(best);
    }
  }
  return out;
}

ScalingFit fit_scaling(const std::string& rule, const std::vector<SweepPoint>& points) {
  ScalingFit fit;
  fit.rule = rule;
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (p.rule != rule) continue;
    if (!(p.regret > 0)) continue;  // degenerate point, excluded from the fit
    xs.push_back(std::log(static_cast<double>(p.T)));
    ys.push_back(std::log(p.regret));
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 4) return fit;  // not enough signal; fit rejected

  double mx = 0, my = 0;
  int n = fit.points;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0;
  for (int i = 0; i < n; ++i) {
    double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss_res += r * r;
  }
  fit.exponent_se = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  fit.ok = true;
  return fit;
}

std::vector<RatioRow> delta_gap_sweep(const SweepSpec& spec, double delta) {
  spec.validate();
  std::vector<RatioRow> rows;
  for (const auto& rule_name : spec.rules) {
    std::vector<RegretEstimate> ests;
    for (int T : spec.t_list) {
      StochasticInstance inst = make_delta_gap_instance(delta, spec.k, T, spec.v_max);
      uint64_t stream = key_hash(spec.seed, static_cast<uint64_t>(T), 0xde17a);
      auto rule = make_rule(rule_name, spec.k, T, spec.v_max, stream);
      ests.push_back(regret_stochastic(*rule, inst, spec.trials, stream, spec.threads));
    }
    for (size_t j = 0; j + 1 < ests.size(); ++j) {
      RatioRow row;
      row.rule = rule_name;
      row.t_lo = spec.t_list[j];
      row.t_hi = spec.t_list[j + 1];
      row.regret_lo = ests[j].mean;
      row.se_lo = ests[j].se;
      row.regret_hi = ests[j + 1].mean;
      row.se_hi = ests[j + 1].se;
      if (ests[j].mean > 0 && ests[j + 1].mean > 0) {
        row.ratio = ests[j + 1].mean / ests[j].mean;
        double rel_lo = ests[j].se / ests[j].mean;
        double rel_hi = ests[j + 1].se / ests[j + 1].mean;
        row.ratio_se = row.ratio * std::sqrt(rel_lo * rel_lo + rel_hi * rel_hi);
        row.low_power = rel_lo > 0.10 || rel_hi > 0.10;
      } else {
        row.ratio = 0;
        row.ratio_se = 0;
        row.low_power = true;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

UnderbidReport ucb1_underbid_experiment(const std::vector<double>& mu,
                                        const std::vector<double>& values, int T,
                                        const std::vector<double>& shading_grid, int64_t trials,
                                        uint64_t seed, int threads) {
  int k = static_cast<int>(mu.size());
  if (static_cast<int>(values.size()) != k)
    throw ConfigError("ucb1_underbid_experiment: dimension mismatch");
  if (k >= 2 && !(mu[0] * values[0] > mu[1] * values[1]))
    throw ConfigError("ucb1_underbid_experiment: requires mu_0 v_0 > mu_1 v_1");

  UnderbidReport report;
  std::vector<std::vector<double>> per_trial(shading_grid.size(),
                                             std::vector<double>(trials));
  for (size_t si = 0; si < shading_grid.size(); ++si) {
    std::vector<double> bids = values;
    bids[0] = shading_grid[si] * values[0];
    BidProfile profile{bids};
    parallel_for(trials, threads, [&, si](int64_t trial) {
      Ucb1Rule rule(k, T);
      rule.start(profile);
      double pay = 0.0;
      int64_t clicks0 = 0;
      for (int t = 0; t < T; ++t) {
        int x = rule.next(t);
        double price = x == 0 ? ucb1_round_price(rule.state(), profile, x) : 0.0;
        // Clicks keyed without the shading index: common random numbers.
        bool y = bernoulli(mu[x], seed, static_cast<uint64_t>(trial),
                           static_cast<uint64_t>(x), static_cast<uint64_t>(t));
        if (x == 0 && y) {
          ++clicks0;
          pay += price;
        }
        rule.observe(t, x, y);
      }
      per_trial[si][trial] = values[0] * static_cast<double>(clicks0) - pay;
    });
  }

  double truthful_mean = 0.0, truthful_se = 0.0;
  for (size_t si = 0; si < shading_grid.size(); ++si) {
    double mean = 0.0;
    for (double u : per_trial[si]) mean += u;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double u : per_trial[si]) ss += (u - mean) * (u - mean);
    double se = std::sqrt(ss / (static_cast<double>(trials - 1) * static_cast<double>(trials)));
    report.points.push_back({shading_grid[si], shading_grid[si] * values[0], mean, se});
    if (shading_grid[si] == 1.0) {
      truthful_mean = mean;
      truthful_se = se;
    }
  }
  const UnderbidPoint* best = &report.points[0];
  for (const auto& p : report.points)
    if (p.mean_utility > best->mean_utility) best = &p;
  report.best_shading = best->shading;
  report.gain_over_truthful = best->mean_utility - truthful_mean;
  report.gain_se = std::sqrt(best->se * best->se + truthful_se * truthful_se);
  return report;
}

Realization fixture_constant_best(int k, int T) {
  Realization rho(k, T);
  for (int t = 0; t < T; ++t) rho.set(0, t, true);
  return rho;
}

Realization fixture_alternating(int k, int T) {
  Realization rho(k, T);
  for (int t = 0; t < T; ++t) rho.set(t % k, t, true);
  return rho;
}

Realization fixture_one_switch(int k, int T) {
  Realization rho(k, T);
  for (int t = 0; t < T / 2; ++t) rho.set(0, t, true);
  for (int t = T / 2; t < T; ++t) rho.set(k - 1, t, true);
  return rho;
}

Realization fixture_all_zero(int k, int T) { return Realization(k, T); }

AdversarialBenchReport psim_adversarial_bench(const std::vector<int>& t_list, int k,
                                              double v_max, int seeds, uint64_t base_seed,
                                              int threads) {
  if (t_list.empty()) throw ConfigError("psim_adversarial_bench: empty T list");
  AdversarialBenchReport report;
  std::vector<double> values(k, v_max);
  BidProfile bids{values};

  std::vector<SweepPoint> worst_points;
  for (int T : t_list) {
    struct Named {
      const char* name;
      Realization rho;
    };
    std::vector<Named> fixtures{{"constant-best", fixture_constant_best(k, T)},
                                {"alternating", fixture_alternating(k, T)},
                                {"one-switch", fixture_one_switch(k, T)},
                                {"all-zero", fixture_all_zero(k, T)}};
    double worst = 0.0;
    for (const auto& fx : fixtures) {
      // Average adversarial regret over rule seeds, parallel over seeds.
      std::vector<double> per_seed(seeds);
      parallel_for(seeds, threads, [&](int64_t s) {
        PsimRule rule(k, T, v_max, key_hash(base_seed, static_cast<uint64_t>(s), 0x9517));
        per_seed[s] = regret_adversarial(rule, bids, values, fx.rho, 1,
                                         key_hash(base_seed, static_cast<uint64_t>(s)));
      });
      double mean = 0.0;
      for (double r : per_seed) mean += r;
      mean /= static_cast<double>(seeds);
      report.points.push_back({fx.name, T, mean});
      worst = std::max(worst, mean);
      double envelope = std::cbrt(k * std::log(static_cast<double>(std::max(2, k)))) *
                        std::pow(static_cast<double>(T), 2.0 / 3.0) * v_max;
      report.envelope_constant = std::max(report.envelope_constant, mean / envelope);
    }
    worst_points.push_back({"psim", "worst-fixture", k, T, seeds, base_seed, worst, 0.0});
  }
  ScalingFit fit = fit_scaling("psim", worst_points);
  report.exponent = fit.exponent;
  report.exponent_se = fit.exponent_se;
  return report;
}

// ---- CSV ----

std::string format_number(double x) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string points_csv(const std::vector<SweepPoint>& points) {
  std::string out = "rule,instance,k,T,trials,seed,regret,stderr\n";
  for (const auto& p : points) {
    out += p.rule + "," + p.instance + "," + std::to_string(p.k) + "," + std::to_string(p.T) +
           "," + std::to_string(p.trials) + "," + std::to_string(p.seed) + "," +
           format_number(p.regret) + "," + format_number(p.se) + "\n";
  }
  return out;
}

std::string fits_csv(const std::vector<ScalingFit>& fits) {
  std::string out = "rule,exponent,exponent_stderr,intercept\n";
  for (const auto& f : fits)
    out += f.rule + "," + format_number(f.exponent) + "," + format_number(f.exponent_se) + "," +
           format_number(f.intercept) + "\n";
  return out;
}

std::string ratios_csv(const std::vector<RatioRow>& rows) {
  std::string out =
      "rule,T_lo,T_hi,regret_lo,stderr_lo,regret_hi,stderr_hi,ratio,ratio_stderr,low_power\n";
  for (const auto& r : rows)
    out += r.rule + "," + std::to_string(r.t_lo) + "," + std::to_string(r.t_hi) + "," +
           format_number(r.regret_lo) + "," + format_number(r.se_lo) + "," +
           format_number(r.regret_hi) + "," + format_number(r.se_hi) + "," +
           format_number(r.ratio) + "," + format_number(r.ratio_se) + "," +
           (r.low_power ? "1" : "0") + "\n";
  return out;
}

std::string underbid_csv(const UnderbidReport& report) {
  std::string out = "shading,bid,mean_utility,stderr\n";
  for (const auto& p : report.points)
    out += format_number(p.shading) + "," + format_number(p.bid) + "," +
           format_number(p.mean_utility) + "," + format_number(p.se) + "\n";
  return out;
}

}  // namespace mabmech
