#pragma once

#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mabmech/rational.hpp"
#include "mabmech/types.hpp"

namespace mabmech {

// Sparse multivariate polynomial over the CTR variables mu_1..mu_k.
// Terms map an exponent vector (alpha_1..alpha_k) to a nonzero coefficient;
// zero coefficients are erased on the fly. Coef is Rational for the exact
// identity checks and double for the payment-integral path.
template <class Coef>
class CtrPolynomial {
 public:
  using Expo = std::vector<int>;

  explicit CtrPolynomial(int vars) : vars_(vars) {
    if (vars < 1) throw ConfigError("CtrPolynomial: need at least one variable");
  }

  static CtrPolynomial constant(int vars, Coef c) {
    CtrPolynomial p(vars);
    p.add_term(Expo(vars, 0), c);
    return p;
  }
  static CtrPolynomial monomial(int vars, Expo e, Coef c) {
    CtrPolynomial p(vars);
    p.add_term(std::move(e), c);
    return p;
  }

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Expo, Coef>& terms() const { return terms_; }

  void add_term(Expo e, Coef c) {
    if (static_cast<int>(e.size()) != vars_)
      throw ConfigError("CtrPolynomial: exponent arity mismatch");
    if (c == Coef(0)) return;
    auto [it, fresh] = terms_.emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (it->second == Coef(0)) terms_.erase(it);
    }
  }

  Coef coefficient(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int total = 0;
      for (int a : e) total += a;
      d = std::max(d, total);
    }
    return d;
  }

  CtrPolynomial& operator+=(const CtrPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend CtrPolynomial operator+(CtrPolynomial a, const CtrPolynomial& b) { return a += b; }
  CtrPolynomial& operator-=(const CtrPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, Coef(0) - c);
    return *this;
  }
  friend CtrPolynomial operator-(CtrPolynomial a, const CtrPolynomial& b) { return a -= b; }

  CtrPolynomial& scale(Coef s) {
    if (s == Coef(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  // Multiply in place by mu_v (shift exponent v up by one).
  void mul_var(int v) {
    std::map<Expo, Coef> shifted;
    for (auto& [e, c] : terms_) {
      Expo e2 = e;
      e2[v] += 1;
      shifted.emplace(std::move(e2), c);
    }
    terms_ = std::move(shifted);
  }

  // Multiply in place by (1 - mu_v).
  void mul_one_minus_var(int v) {
    CtrPolynomial up = *this;
    up.mul_var(v);
    *this -= up;
  }

  friend CtrPolynomial operator*(const CtrPolynomial& a, const CtrPolynomial& b) {
    CtrPolynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Expo e = ea;
        for (int v = 0; v < a.vars_; ++v) e[v] += eb[v];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }

  bool operator==(const CtrPolynomial&) const = default;

  double eval(std::span<const double> mu) const {
    if (static_cast<int>(mu.size()) != vars_)
      throw ConfigError("CtrPolynomial::eval: arity mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = coef_to_double(c);
      for (int v = 0; v < vars_; ++v)
        for (int rep = 0; rep < e[v]; ++rep) term *= mu[v];
      sum += term;
    }
    return sum;
  }

  // One term per line: "a1 a2 ... ak num den" (doubles print as num/1 when
  // integral, otherwise with full precision and den 1).
  std::string serialize() const {
    std::string out;
    for (const auto& [e, c] : terms_) {
      for (int v = 0; v < vars_; ++v) out += std::to_string(e[v]) + " ";
      out += coef_record(c);
      out += "\n";
    }
    return out;
  }

 private:
  static std::string coef_record(const Rational& r) {
    return std::to_string(r.num()) + " " + std::to_string(r.den());
  }
  static std::string coef_record(double d) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g 1", d);
    return buf;
  }
  static double coef_to_double(const Rational& r) { return r.to_double(); }
  static double coef_to_double(double d) { return d; }

  int vars_;
  std::map<Expo, Coef> terms_;
};

using RationalPoly = CtrPolynomial<Rational>;
using DoublePoly = CtrPolynomial<double>;

}  // namespace mabmech
