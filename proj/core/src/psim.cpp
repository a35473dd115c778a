#include "mabmech/psim.hpp"

#include <cmath>

#include "mabmech/rng.hpp"

namespace mabmech {

PsimParams psim_params(int k, int T, double v_max) {
  if (k < 1 || T < 1) throw ConfigError("psim_params: need k >= 1, T >= 1");
  if (!(v_max > 0)) throw ConfigError("psim_params: v_max must be positive");
  if (k > T) throw ConfigError("psim_params: k exploration rounds cannot fit in one phase");

  double lnk = std::log(static_cast<double>(k));
  int P = std::max<int>(
      1, static_cast<int>(std::llround(std::cbrt(lnk) *
                                       std::pow(static_cast<double>(T) / k, 2.0 / 3.0))));
  while (P > 1 && T / P < k) --P;  // every phase needs k exploration slots

  PsimParams p;
  p.k = k;
  p.T = T;
  p.phases = P;
  p.phase_len = T / P;
  p.eps = std::cbrt(static_cast<double>(k) * lnk / static_cast<double>(T));
  p.v_max = v_max;
  return p;
}

double psim_gamma(const PsimParams& params, const BidProfile& bids, int agent,
                  std::span<const int64_t> s) {
  int k = params.k;
  if (bids.agents() != k || static_cast<int>(s.size()) != k)
    throw ConfigError("psim_gamma: dimension mismatch");
  double a = 1.0 + params.eps;
  double denom = 0.0, own = 0.0;
  for (int j = 0; j < k; ++j) {
    double w = std::pow(a, bids[j] * static_cast<double>(s[j]) / params.v_max);
    denom += w;
    if (j == agent) own = w;
  }
  return own / denom;
}

namespace {

// integral_0^{hi} a^{c x} / (a^{c x} + D) dx for a > 1, c > 0, D > 0.
double gamma_integral_closed(double a, double c, double D, double hi) {
  double lna = std::log(a);
  return (std::log(std::pow(a, c * hi) + D) - std::log(1.0 + D)) / (c * lna);
}

double adaptive_simpson(double (*f)(double, const double*), const double* env, double lo,
                        double hi, double flo, double fmid, double fhi, double whole,
                        double tol, int depth) {
  double mid = 0.5 * (lo + hi);
  double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
  double flm = f(lmid, env), frm = f(rmid, env);
  double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, env, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, env, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

double gamma_of_x(double x, const double* env) {
  // env = {a, c, D}
  double num = std::pow(env[0], env[1] * x);
  return num / (num + env[2]);
}

double gamma_integral_quadrature(double a, double c, double D, double hi, double tol) {
  double env[3] = {a, c, D};
  double flo = gamma_of_x(0.0, env);
  double fhi = gamma_of_x(hi, env);
  double fmid = gamma_of_x(0.5 * hi, env);
  double whole = hi / 6.0 * (flo + 4.0 * fmid + fhi);
  return adaptive_simpson(gamma_of_x, env, 0.0, hi, flo, fmid, fhi, whole, tol, 48);
}

}  // namespace

double psim_payment_per_click(const PsimParams& params, const BidProfile& bids, int agent,
                              std::span<const int64_t> s, bool cross_check) {
  int k = params.k;
  if (bids.agents() != k || static_cast<int>(s.size()) != k)
    throw ConfigError("psim_payment_per_click: dimension mismatch");
  if (s[agent] == 0) return 0.0;  // gamma constant in own bid, integral telescopes

  double a = 1.0 + params.eps;
  double c = static_cast<double>(s[agent]) / params.v_max;
  double D = 0.0;
  for (int j = 0; j < k; ++j) {
    if (j == agent) continue;
    D += std::pow(a, bids[j] * static_cast<double>(s[j]) / params.v_max);
  }
  double b_i = bids[agent];
  if (D == 0.0) return 0.0;  // k = 1: gamma identically 1

  double integral = gamma_integral_closed(a, c, D, b_i);
  if (cross_check) {
    double quad = gamma_integral_quadrature(a, c, D, b_i, 1e-12 * std::max(1.0, b_i));
    if (std::abs(quad - integral) > 1e-9 * std::max(1.0, std::abs(integral)))
      throw ConsistencyError("psim_payment_per_click: closed form and quadrature disagree");
  }
  double gamma_at_bid = psim_gamma(params, bids, agent, s);
  double price = b_i - integral / gamma_at_bid;
  return std::clamp(price, 0.0, b_i);
}

PsimRule::PsimRule(int k, int T, double v_max, uint64_t seed)
    : params_(psim_params(k, T, v_max)), seed_(seed) {}

void PsimRule::roll_schedule() {
  schedule_.assign(params_.T, -1);
  for (int p = 0; p < params_.phases; ++p) {
    int lo = params_.phase_start(p);
    int hi = (p == params_.phases - 1) ? params_.T : params_.phase_start(p + 1);
    int len = hi - lo;
    SplitMix rng(key_hash(seed_, 0x9514, static_cast<uint64_t>(p)));
    // Partial Fisher-Yates: the first k slots of a shuffle of [lo, hi).
    std::vector<int> rounds(len);
    for (int i = 0; i < len; ++i) rounds[i] = lo + i;
    for (int i = 0; i < params_.k; ++i) {
      int j = i + rng.next_below(len - i);
      std::swap(rounds[i], rounds[j]);
    }
    // Random agent permutation over the chosen slots.
    std::vector<int> agents(params_.k);
    for (int i = 0; i < params_.k; ++i) agents[i] = i;
    for (int i = params_.k - 1; i > 0; --i) {
      int j = rng.next_below(i + 1);
      std::swap(agents[i], agents[j]);
    }
    for (int i = 0; i < params_.k; ++i) schedule_[rounds[i]] = agents[i];
  }
}

void PsimRule::start(const BidProfile& bids) {
  if (bids.agents() != params_.k) throw ConfigError("PsimRule: bid dimension mismatch");
  bids_ = bids.values();
  roll_schedule();
  s_settled_.assign(params_.k, 0);
  s_current_.assign(params_.k, 0);
  current_phase_ = 0;
}

int PsimRule::next(int t) {
  int phase = params_.phase_of(t);
  if (phase != current_phase_) {
    s_settled_ = s_current_;
    current_phase_ = phase;
  }
  int explore = schedule_[t];
  if (explore >= 0) return explore;

  // Sample from gamma built on clicks settled through the previous phase.
  double a = 1.0 + params_.eps;
  double total = 0.0;
  for (int j = 0; j < params_.k; ++j)
    total += std::pow(a, bids_[j] * static_cast<double>(s_settled_[j]) / params_.v_max);
  double u = u01(key_hash(seed_, 0xa11c, static_cast<uint64_t>(t))) * total;
  double acc = 0.0;
  for (int j = 0; j < params_.k; ++j) {
    acc += std::pow(a, bids_[j] * static_cast<double>(s_settled_[j]) / params_.v_max);
    if (u < acc) return j;
  }
  return params_.k - 1;
}

void PsimRule::observe(int t, int agent, bool clicked) {
  // Exploitation feedback is discarded by design.
  if (schedule_[t] == agent && schedule_[t] >= 0 && clicked) s_current_[agent] += 1;
}

}  // namespace mabmech
