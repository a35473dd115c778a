#include "mabmech/types.hpp"

#include <sstream>

#include "mabmech/rational.hpp"
#include "mabmech/rng.hpp"

namespace mabmech {

Realization Realization::bernoulli(const std::vector<double>& mu, int T, uint64_t seed,
                                   uint64_t trial) {
  Realization r(static_cast<int>(mu.size()), T);
  for (int i = 0; i < r.agents(); ++i)
    for (int t = 0; t < T; ++t)
      r.set(i, t, mabmech::bernoulli(mu[i], seed, trial, static_cast<uint64_t>(i),
                                     static_cast<uint64_t>(t)));
  return r;
}

Realization Realization::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw ConfigError("Realization: no rows");
  int k = static_cast<int>(rows.size());
  int T = static_cast<int>(rows[0].size());
  Realization r(k, T);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(rows[i].size()) != T)
      throw ConfigError("Realization: ragged rows");
    for (int t = 0; t < T; ++t) {
      char c = rows[i][t];
      if (c != '0' && c != '1') throw ConfigError("Realization: rows must be 0/1");
      r.set(i, t, c == '1');
    }
  }
  return r;
}

std::vector<std::string> Realization::to_rows() const {
  std::vector<std::string> rows(k_);
  for (int i = 0; i < k_; ++i) {
    rows[i].resize(T_);
    for (int t = 0; t < T_; ++t) rows[i][t] = at(i, t) ? '1' : '0';
  }
  return rows;
}

Realization Realization::from_index(int k, int T, uint64_t bits) {
  if (k * T > 63) throw BudgetError("Realization::from_index: k*T too large");
  Realization r(k, T);
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < T; ++t)
      r.set(i, t, (bits >> (static_cast<uint64_t>(i) * T + t)) & 1);
  return r;
}

uint64_t Realization::to_index() const {
  if (k_ * T_ > 63) throw BudgetError("Realization::to_index: k*T too large");
  uint64_t bits = 0;
  for (int i = 0; i < k_; ++i)
    for (int t = 0; t < T_; ++t)
      if (at(i, t)) bits |= uint64_t{1} << (static_cast<uint64_t>(i) * T_ + t);
  return bits;
}

StochasticInstance::StochasticInstance(int k_, int T_, std::vector<double> mu,
                                       std::vector<double> v, BidProfile b, double vmax)
    : k(k_), T(T_), ctrs(std::move(mu)), values(std::move(v)), bids(std::move(b)), v_max(vmax) {
  if (k < 1 || T < 1) throw ConfigError("StochasticInstance: need k >= 1, T >= 1");
  if (static_cast<int>(ctrs.size()) != k || static_cast<int>(values.size()) != k ||
      bids.agents() != k)
    throw ConfigError("StochasticInstance: dimension mismatch");
  if (!(v_max > 0)) throw ConfigError("StochasticInstance: v_max must be positive");
  for (double m : ctrs)
    if (m < 0.0 || m > 1.0) throw ConfigError("StochasticInstance: CTR outside [0,1]");
  for (double vi : values)
    if (!(vi > 0) || vi > v_max) throw ConfigError("StochasticInstance: value outside (0, v_max]");
}

void attach_utilities(MechanismOutcome& out, const std::vector<double>& values) {
  size_t k = out.payments.size();
  if (values.size() != k) throw ConfigError("attach_utilities: dimension mismatch");
  out.utilities.resize(k);
  for (size_t i = 0; i < k; ++i)
    out.utilities[i] = values[i] * static_cast<double>(out.clicks.clicks[i]) - out.payments[i];
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ConfigError("Rational::parse: bad literal '" + text + "'");
  }
}

Rational Rational::from_double_exact(double x) {
  if (x == 0) return Rational(0);
  // Scale by powers of two until integral; doubles have <= 52 fractional bits.
  long long den = 1;
  double y = x;
  for (int i = 0; i < 62 && y != static_cast<long long>(y); ++i) {
    y *= 2;
    den <<= 1;
  }
  if (y != static_cast<long long>(y))
    throw std::overflow_error("Rational::from_double_exact: not representable");
  return Rational(static_cast<long long>(y), den);
}

}  // namespace mabmech
