#include "mabmech/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mabmech/parallel.hpp"
#include "mabmech/rng.hpp"

namespace mabmech {

BidGrid BidGrid::uniform(int k, std::vector<double> values) {
  if (k < 1 || values.empty()) throw ConfigError("BidGrid: need k >= 1 and nonempty values");
  std::sort(values.begin(), values.end());
  for (double v : values)
    if (!(v > 0)) throw ConfigError("BidGrid: values must be positive");
  BidGrid g;
  g.per_agent.assign(k, values);
  return g;
}

int64_t BidGrid::profile_count() const {
  int64_t n = 1;
  for (const auto& vs : per_agent) n *= static_cast<int64_t>(vs.size());
  return n;
}

std::vector<double> BidGrid::profile(int64_t index) const {
  std::vector<double> out(per_agent.size());
  for (int i = agents() - 1; i >= 0; --i) {
    int64_t g = static_cast<int64_t>(per_agent[i].size());
    out[i] = per_agent[i][index % g];
    index /= g;
  }
  return out;
}

const char* to_string(Counterexample::Kind kind) {
  switch (kind) {
    case Counterexample::Kind::Monotonicity: return "monotonicity";
    case Counterexample::Kind::Separation: return "separation";
    case Counterexample::Kind::WeakSeparation: return "weak-separation";
    case Counterexample::Kind::Truthfulness: return "truthfulness";
    case Counterexample::Kind::Normalization: return "normalization";
  }
  return "?";
}

namespace {

Counterexample::Kind kind_from_string(const std::string& s) {
  using K = Counterexample::Kind;
  if (s == "monotonicity") return K::Monotonicity;
  if (s == "separation") return K::Separation;
  if (s == "weak-separation") return K::WeakSeparation;
  if (s == "truthfulness") return K::Truthfulness;
  if (s == "normalization") return K::Normalization;
  throw ConfigError("Counterexample: unknown kind '" + s + "'");
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  char buf[40];
  for (size_t i = 0; i < xs.size(); ++i) {
    snprintf(buf, sizeof buf, "%.17g", xs[i]);
    if (i) out += " ";
    out += buf;
  }
  return out;
}

std::vector<double> split_doubles(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  double x;
  while (in >> x) out.push_back(x);
  return out;
}

// Full-run allocations for one (bids, realization) pair.
std::vector<int> allocations(const AllocationRule& proto, const BidProfile& bids,
                             const Realization& rho) {
  auto rule = proto.clone();
  History h = run_allocation(*rule, bids, rho);
  return {h.shown.begin(), h.shown.end()};
}

double to_double_of(const Rational& r) { return r.to_double(); }
double to_double_of(double d) { return d; }

}  // namespace

std::string Counterexample::serialize() const {
  std::ostringstream out;
  out << "kind: " << to_string(kind) << "\n";
  out << "k: " << k << "\n";
  out << "T: " << T << "\n";
  out << "agent: " << agent << "\n";
  out << "round: " << round << "\n";
  out << "influenced_round: " << influenced_round << "\n";
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", alt_bid);
  out << "alt_bid: " << buf << "\n";
  snprintf(buf, sizeof buf, "%.17g", value);
  out << "value: " << buf << "\n";
  out << "bids: " << join_doubles(bids) << "\n";
  out << "bids_alt: " << join_doubles(bids_alt) << "\n";
  out << "realization:\n";
  for (const auto& row : realization.to_rows()) out << row << "\n";
  out << "detail: " << detail << "\n";
  return out.str();
}

Counterexample Counterexample::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Counterexample cex;
  std::vector<std::string> rows;
  bool in_rows = false;
  while (std::getline(in, line)) {
    if (in_rows) {
      if (line.rfind("detail: ", 0) == 0) {
        cex.detail = line.substr(8);
        in_rows = false;
        continue;
      }
      if (!line.empty()) rows.push_back(line);
      continue;
    }
    auto colon = line.find(": ");
    std::string key = colon == std::string::npos ? line : line.substr(0, colon);
    std::string val = colon == std::string::npos ? "" : line.substr(colon + 2);
    if (key == "kind") cex.kind = kind_from_string(val);
    else if (key == "k") cex.k = std::stoi(val);
    else if (key == "T") cex.T = std::stoi(val);
    else if (key == "agent") cex.agent = std::stoi(val);
    else if (key == "round") cex.round = std::stoi(val);
    else if (key == "influenced_round") cex.influenced_round = std::stoi(val);
    else if (key == "alt_bid") cex.alt_bid = std::stod(val);
    else if (key == "value") cex.value = std::stod(val);
    else if (key == "bids") cex.bids = split_doubles(val);
    else if (key == "bids_alt") cex.bids_alt = split_doubles(val);
    else if (key == "realization:") in_rows = true;
    else if (line == "realization:") in_rows = true;
  }
  if (rows.empty()) throw ConfigError("Counterexample::parse: missing realization rows");
  cex.realization = Realization::from_rows(rows);
  return cex;
}

std::vector<InfluenceRecord> find_influential_rounds(const AllocationRule& proto,
                                                     const BidProfile& bids,
                                                     const Realization& rho) {
  std::vector<InfluenceRecord> records;
  std::vector<int> base = allocations(proto, bids, rho);
  int T = rho.rounds();
  for (int t = 0; t < T; ++t) {
    int j = base[t];
    std::vector<int> alt = allocations(proto, bids, rho.flipped(j, t));
    for (int tp = t + 1; tp < T; ++tp)
      if (alt[tp] != base[tp]) records.push_back({t, j, tp, base[tp], alt[tp]});
  }
  return records;
}

bool is_secured(const AllocationRule& proto, const BidProfile& bids, const Realization& rho,
                int round, int agent, const BidGrid& grid) {
  std::vector<int> base = allocations(proto, bids, rho);
  for (double up : grid.per_agent[agent]) {
    if (!(up > bids[agent])) continue;
    std::vector<int> raised = allocations(proto, bids.with_bid(agent, up), rho);
    if (raised[round] != base[round]) return false;
  }
  return true;
}

bool check_bid_independent(const AllocationRule& proto, const Realization& rho, int round,
                           const BidGrid& grid) {
  int64_t profiles = grid.profile_count();
  int first = -1;
  for (int64_t p = 0; p < profiles; ++p) {
    BidProfile bids(grid.profile(p));
    int chosen = allocations(proto, bids, rho)[round];
    if (first < 0) first = chosen;
    else if (chosen != first) return false;
  }
  return true;
}

std::optional<Counterexample> check_pointwise_monotone(const AllocationRule& proto, int k, int T,
                                                       const BidGrid& grid,
                                                       const EnumerationBudget& budget) {
  budget.check(k, T);
  for (uint64_t r = 0; r < (uint64_t{1} << (k * T)); ++r) {
    Realization rho = Realization::from_index(k, T, r);
    for (int64_t p = 0; p < grid.profile_count(); ++p) {
      BidProfile bids(grid.profile(p));
      std::vector<int> base = allocations(proto, bids, rho);
      for (int agent = 0; agent < k; ++agent) {
        for (double up : grid.per_agent[agent]) {
          if (!(up > bids[agent])) continue;
          std::vector<int> raised = allocations(proto, bids.with_bid(agent, up), rho);
          for (int t = 0; t < T; ++t) {
            if (base[t] == agent && raised[t] != agent) {
              Counterexample cex;
              cex.kind = Counterexample::Kind::Monotonicity;
              cex.k = k;
              cex.T = T;
              cex.bids = bids.values();
              cex.agent = agent;
              cex.alt_bid = up;
              cex.round = t;
              cex.realization = rho;
              cex.detail = "shown at bid " + std::to_string(bids[agent]) +
                           " but not at raised bid " + std::to_string(up);
              return cex;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> check_exploration_separated(const AllocationRule& proto, int k,
                                                          int T, const BidGrid& grid,
                                                          const EnumerationBudget& budget) {
  budget.check(k, T);
  int64_t profiles = grid.profile_count();
  for (uint64_t r = 0; r < (uint64_t{1} << (k * T)); ++r) {
    Realization rho = Realization::from_index(k, T, r);
    // Influential rounds of rho, over every grid profile.
    std::vector<char> influential(T, 0);
    std::vector<int64_t> witness(T, -1);
    std::vector<int> witness_influenced(T, -1);
    for (int64_t p = 0; p < profiles; ++p) {
      BidProfile bids(grid.profile(p));
      for (const auto& rec : find_influential_rounds(proto, bids, rho)) {
        if (!influential[rec.round]) {
          influential[rec.round] = 1;
          witness[rec.round] = p;
          witness_influenced[rec.round] = rec.influenced_round;
        }
      }
    }
    for (int t = 0; t < T; ++t) {
      if (!influential[t]) continue;
      // Bid-independence of round t w.r.t. rho; remember the clashing pair.
      int first_choice = -1;
      int64_t first_profile = -1;
      for (int64_t p = 0; p < profiles; ++p) {
        BidProfile bids(grid.profile(p));
        int chosen = allocations(proto, bids, rho)[t];
        if (first_choice < 0) {
          first_choice = chosen;
          first_profile = p;
        } else if (chosen != first_choice) {
          Counterexample cex;
          cex.kind = Counterexample::Kind::Separation;
          cex.k = k;
          cex.T = T;
          cex.bids = grid.profile(first_profile);
          cex.bids_alt = grid.profile(p);
          cex.round = t;
          cex.influenced_round = witness_influenced[t];
          cex.realization = rho;
          cex.agent = first_choice;
          cex.alt_bid = 0.0;
          cex.detail = "influential round (witness profile " + std::to_string(witness[t]) +
                       ") allocates agent " + std::to_string(first_choice) + " vs " +
                       std::to_string(chosen) + " across bid profiles";
          // Store the influence witness profile in bids when it differs; the
          // two clashing profiles are what replay needs.
          return cex;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> check_weakly_separated(const AllocationRule& proto, int k, int T,
                                                     const BidGrid& grid,
                                                     const EnumerationBudget& budget) {
  budget.check(k, T);
  for (uint64_t r = 0; r < (uint64_t{1} << (k * T)); ++r) {
    Realization rho = Realization::from_index(k, T, r);
    for (int64_t p = 0; p < grid.profile_count(); ++p) {
      BidProfile bids(grid.profile(p));
      for (const auto& rec : find_influential_rounds(proto, bids, rho)) {
        for (int influenced : {rec.agent_base, rec.agent_flipped}) {
          if (is_secured(proto, bids, rho, rec.round, influenced, grid)) continue;
          std::vector<int> base = allocations(proto, bids, rho);
          double raised = 0.0;
          for (double up : grid.per_agent[influenced]) {
            if (!(up > bids[influenced])) continue;
            if (allocations(proto, bids.with_bid(influenced, up), rho)[rec.round] !=
                base[rec.round]) {
              raised = up;
              break;
            }
          }
          Counterexample cex;
          cex.kind = Counterexample::Kind::WeakSeparation;
          cex.k = k;
          cex.T = T;
          cex.bids = bids.values();
          cex.agent = influenced;
          cex.alt_bid = raised;
          cex.round = rec.round;
          cex.influenced_round = rec.influenced_round;
          cex.realization = rho;
          cex.detail = "round influences round " + std::to_string(rec.influenced_round) +
                       " (agents " + std::to_string(rec.agent_base) + "/" +
                       std::to_string(rec.agent_flipped) + ") but raising agent " +
                       std::to_string(influenced) + " to " + std::to_string(raised) +
                       " changes its allocation";
          return cex;
        }
      }
    }
  }
  return std::nullopt;
}

template <class Num>
std::optional<Counterexample> check_truthful_exhaustive(const MechanismOracle<Num>& mech, int k,
                                                        int T,
                                                        const std::vector<Num>& value_grid,
                                                        const EnumerationBudget& budget) {
  budget.check(k, T);
  int g = static_cast<int>(value_grid.size());
  if (g < 2) throw ConfigError("check_truthful_exhaustive: need at least two grid values");

  int64_t profiles = 1;
  for (int i = 0; i < k; ++i) profiles *= g;
  auto profile_of = [&](int64_t index) {
    std::vector<Num> bids(k);
    for (int i = k - 1; i >= 0; --i) {
      bids[i] = value_grid[index % g];
      index /= g;
    }
    return bids;
  };
  auto with_digit = [&](int64_t index, int agent, int digit) {
    // Replace agent's grid digit in the mixed-radix profile index.
    int64_t scale = 1;
    for (int i = k - 1; i > agent; --i) scale *= g;
    int64_t old_digit = (index / scale) % g;
    return index + (static_cast<int64_t>(digit) - old_digit) * scale;
  };

  for (uint64_t r = 0; r < (uint64_t{1} << (k * T)); ++r) {
    Realization rho = Realization::from_index(k, T, r);
    std::vector<MechanismOutcomeOf<Num>> outcome(profiles);
    for (int64_t p = 0; p < profiles; ++p) outcome[p] = mech(profile_of(p), rho);

    for (int64_t p = 0; p < profiles; ++p) {
      for (int agent = 0; agent < k; ++agent) {
        for (int v_idx = 0; v_idx < g; ++v_idx) {
          const Num& v = value_grid[v_idx];
          int64_t truthful = with_digit(p, agent, v_idx);
          const auto& ot = outcome[truthful];
          const auto& od = outcome[p];
          Num u_truth = v * Num(ot.clicks[agent]) - ot.payments[agent];
          Num u_dev = v * Num(od.clicks[agent]) - od.payments[agent];
          if (u_dev > u_truth) {
            auto bids = profile_of(p);
            Counterexample cex;
            cex.kind = Counterexample::Kind::Truthfulness;
            cex.k = k;
            cex.T = T;
            cex.agent = agent;
            cex.realization = rho;
            cex.bids.resize(k);
            for (int i = 0; i < k; ++i) cex.bids[i] = to_double_of(bids[i]);
            cex.value = to_double_of(v);
            cex.alt_bid = to_double_of(bids[agent]);
            cex.detail = "bidding " + std::to_string(cex.alt_bid) + " beats truthful " +
                         std::to_string(cex.value);
            return cex;
          }
        }
      }
    }
  }
  return std::nullopt;
}

template <class Num>
std::optional<Counterexample> check_normalized(const MechanismOracle<Num>& mech, int k, int T,
                                               const std::vector<Num>& bid_grid,
                                               const EnumerationBudget& budget) {
  budget.check(k, T);
  int g = static_cast<int>(bid_grid.size());
  int64_t profiles = 1;
  for (int i = 0; i < k; ++i) profiles *= g;
  auto profile_of = [&](int64_t index) {
    std::vector<Num> bids(k);
    for (int i = k - 1; i >= 0; --i) {
      bids[i] = bid_grid[index % g];
      index /= g;
    }
    return bids;
  };

  for (uint64_t r = 0; r < (uint64_t{1} << (k * T)); ++r) {
    Realization rho = Realization::from_index(k, T, r);
    for (int64_t p = 0; p < profiles; ++p) {
      auto bids = profile_of(p);
      auto out = mech(bids, rho);
      for (int i = 0; i < k; ++i) {
        bool low = out.payments[i] < Num(0);
        bool high = out.payments[i] > bids[i] * Num(out.clicks[i]);
        if (low || high) {
          Counterexample cex;
          cex.kind = Counterexample::Kind::Normalization;
          cex.k = k;
          cex.T = T;
          cex.agent = i;
          cex.realization = rho;
          cex.bids.resize(k);
          for (int j = 0; j < k; ++j) cex.bids[j] = to_double_of(bids[j]);
          cex.detail = low ? "negative payment" : "payment exceeds b_i * C_i";
          return cex;
        }
      }
    }
  }
  return std::nullopt;
}

WeakTruthReport check_weakly_truthful_mc(const Mechanism& proto,
                                         const std::vector<double>& values,
                                         const std::vector<double>& deviation_grid,
                                         const std::vector<Realization>& fixtures,
                                         int64_t seeds, uint64_t base_seed, int threads) {
  if (seeds < 2) throw ConfigError("check_weakly_truthful_mc: need seeds >= 2");
  int k = proto.agents();
  if (static_cast<int>(values.size()) != k)
    throw ConfigError("check_weakly_truthful_mc: values dimension mismatch");
  BidProfile truthful{values};
  int g = static_cast<int>(deviation_grid.size());

  WeakTruthReport report;
  report.seeds = seeds;
  for (int fi = 0; fi < static_cast<int>(fixtures.size()); ++fi) {
    const Realization& rho = fixtures[fi];
    // diffs[seed][agent * g + d]
    std::vector<std::vector<double>> diffs(
        seeds, std::vector<double>(static_cast<size_t>(k) * g,
                                   std::numeric_limits<double>::quiet_NaN()));
    parallel_for(seeds, threads, [&](int64_t s) {
      uint64_t run_seed = key_hash(base_seed, static_cast<uint64_t>(fi), static_cast<uint64_t>(s));
      auto mech_t = proto.clone();
      mech_t->reseed(run_seed);
      MechanismOutcome truth = mech_t->run(truthful, rho);
      attach_utilities(truth, values);
      for (int agent = 0; agent < k; ++agent) {
        for (int d = 0; d < g; ++d) {
          if (deviation_grid[d] == values[agent]) continue;
          auto mech_d = proto.clone();
          mech_d->reseed(run_seed);  // paired comparison on the same seed
          MechanismOutcome dev = mech_d->run(truthful.with_bid(agent, deviation_grid[d]), rho);
          attach_utilities(dev, values);
          diffs[s][static_cast<size_t>(agent) * g + d] =
              truth.utilities[agent] - dev.utilities[agent];
        }
      }
    });
    for (int agent = 0; agent < k; ++agent) {
      for (int d = 0; d < g; ++d) {
        if (deviation_grid[d] == values[agent]) continue;
        double mean = 0.0;
        for (int64_t s = 0; s < seeds; ++s) mean += diffs[s][static_cast<size_t>(agent) * g + d];
        mean /= static_cast<double>(seeds);
        double ss = 0.0;
        for (int64_t s = 0; s < seeds; ++s) {
          double x = diffs[s][static_cast<size_t>(agent) * g + d] - mean;
          ss += x * x;
        }
        double se = std::sqrt(ss / (static_cast<double>(seeds - 1) * static_cast<double>(seeds)));
        report.rows.push_back(
            {fi, agent, deviation_grid[d], mean, se, mean < -3.0 * se});
      }
    }
  }
  return report;
}

MonotoneMcReport check_monotone_in_expectation_mc(const AllocationRule& proto,
                                                  const StochasticInstance& inst, int agent,
                                                  const std::vector<double>& bid_grid,
                                                  int64_t trials, uint64_t seed, int threads) {
  if (trials < 2) throw ConfigError("check_monotone_in_expectation_mc: need trials >= 2");
  MonotoneMcReport report;
  report.agent = agent;
  for (double bid : bid_grid) {
    BidProfile bids = inst.bids.with_bid(agent, bid);
    std::vector<double> per_trial(trials);
    parallel_for(trials, threads, [&](int64_t trial) {
      auto rule = proto.clone();
      rule->reseed(key_hash(seed, static_cast<uint64_t>(trial), 0x30e));
      rule->start(bids);
      int64_t clicks = 0;
      for (int t = 0; t < inst.T; ++t) {
        int x = rule->next(t);
        // Common random numbers across grid points: keys ignore the bid.
        bool y = bernoulli(inst.ctrs[x], seed, static_cast<uint64_t>(trial),
                           static_cast<uint64_t>(x), static_cast<uint64_t>(t));
        rule->observe(t, x, y);
        if (x == agent && y) ++clicks;
      }
      per_trial[trial] = static_cast<double>(clicks);
    });
    double mean = 0.0;
    for (double c : per_trial) mean += c;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double c : per_trial) ss += (c - mean) * (c - mean);
    double se = std::sqrt(ss / (static_cast<double>(trials - 1) * static_cast<double>(trials)));
    report.points.push_back({bid, mean, se});
  }
  for (size_t j = 0; j + 1 < report.points.size(); ++j) {
    const auto& a = report.points[j];
    const auto& b = report.points[j + 1];
    double gap_se = std::sqrt(a.se * a.se + b.se * b.se);
    if (b.mean_clicks - a.mean_clicks < -3.0 * gap_se)
      report.flagged_steps.push_back(static_cast<int>(j));
  }
  return report;
}

bool replay_counterexample(const Counterexample& cex, const AllocationRule& proto) {
  BidProfile bids{cex.bids};
  switch (cex.kind) {
    case Counterexample::Kind::Monotonicity: {
      std::vector<int> base = allocations(proto, bids, cex.realization);
      std::vector<int> raised =
          allocations(proto, bids.with_bid(cex.agent, cex.alt_bid), cex.realization);
      return base[cex.round] == cex.agent && raised[cex.round] != cex.agent;
    }
    case Counterexample::Kind::Separation: {
      bool influential = false;
      for (const auto& rec : find_influential_rounds(proto, bids, cex.realization))
        if (rec.round == cex.round) influential = true;
      BidProfile alt{cex.bids_alt};
      int at_base = allocations(proto, bids, cex.realization)[cex.round];
      int at_alt = allocations(proto, alt, cex.realization)[cex.round];
      return influential && at_base != at_alt;
    }
    case Counterexample::Kind::WeakSeparation: {
      bool influential_on_agent = false;
      for (const auto& rec : find_influential_rounds(proto, bids, cex.realization))
        if (rec.round == cex.round &&
            (rec.agent_base == cex.agent || rec.agent_flipped == cex.agent))
          influential_on_agent = true;
      if (!influential_on_agent) return false;
      std::vector<int> base = allocations(proto, bids, cex.realization);
      std::vector<int> raised =
          allocations(proto, bids.with_bid(cex.agent, cex.alt_bid), cex.realization);
      return raised[cex.round] != base[cex.round];
    }
    default:
      throw ConfigError("replay_counterexample: kind requires a mechanism oracle");
  }
}

bool replay_counterexample(const Counterexample& cex, const MechanismOracle<double>& mech) {
  switch (cex.kind) {
    case Counterexample::Kind::Truthfulness: {
      std::vector<double> dev_bids = cex.bids;
      std::vector<double> truth_bids = cex.bids;
      truth_bids[cex.agent] = cex.value;
      auto od = mech(dev_bids, cex.realization);
      auto ot = mech(truth_bids, cex.realization);
      double u_dev = cex.value * static_cast<double>(od.clicks[cex.agent]) -
                     od.payments[cex.agent];
      double u_truth = cex.value * static_cast<double>(ot.clicks[cex.agent]) -
                       ot.payments[cex.agent];
      return u_dev > u_truth;
    }
    case Counterexample::Kind::Normalization: {
      auto out = mech(cex.bids, cex.realization);
      double cap = cex.bids[cex.agent] * static_cast<double>(out.clicks[cex.agent]);
      return out.payments[cex.agent] < 0 || out.payments[cex.agent] > cap;
    }
    default:
      throw ConfigError("replay_counterexample: kind requires an allocation rule");
  }
}

// ---- explicit instantiations ----

template std::optional<Counterexample> check_truthful_exhaustive<Rational>(
    const MechanismOracle<Rational>&, int, int, const std::vector<Rational>&,
    const EnumerationBudget&);
template std::optional<Counterexample> check_truthful_exhaustive<double>(
    const MechanismOracle<double>&, int, int, const std::vector<double>&,
    const EnumerationBudget&);
template std::optional<Counterexample> check_normalized<Rational>(
    const MechanismOracle<Rational>&, int, int, const std::vector<Rational>&,
    const EnumerationBudget&);
template std::optional<Counterexample> check_normalized<double>(const MechanismOracle<double>&,
                                                                int, int,
                                                                const std::vector<double>&,
                                                                const EnumerationBudget&);

}  // namespace mabmech
