#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ptf {

/// Bivariate polynomial with exact rational coefficients, keyed by (deg_x, deg_y).
class BivariatePolynomial {
 public:
  using Exponent = std::pair<int, int>;

  BivariatePolynomial() = default;

  static BivariatePolynomial constant(const mpq_class& c) {
    BivariatePolynomial p;
    p.add_term(0, 0, c);
    return p;
  }
  static BivariatePolynomial x() {
    BivariatePolynomial p;
    p.add_term(1, 0, 1);
    return p;
  }
  static BivariatePolynomial y() {
    BivariatePolynomial p;
    p.add_term(0, 1, 1);
    return p;
  }

  // (y - r_1)(y - r_2)...; the empty product is 1.
  static BivariatePolynomial product_of_y_roots(const std::vector<int>& roots) {
    BivariatePolynomial p = constant(1);
    for (int r : roots) p = p * (y() - constant(r));
    return p;
  }

  void add_term(int dx, int dy, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({dx, dy}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Exponent, mpq_class>& terms() const { return terms_; }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  mpq_class operator()(const mpq_class& xv, const mpq_class& yv) const {
    mpq_class sum = 0;
    for (const auto& [e, c] : terms_) {
      mpq_class term = c;
      for (int i = 0; i < e.first; ++i) term *= xv;
      for (int i = 0; i < e.second; ++i) term *= yv;
      sum += term;
    }
    return sum;
  }

  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, c);
    return a;
  }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, -c);
    return a;
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    }
    return r;
  }
  friend BivariatePolynomial operator*(const mpq_class& s, const BivariatePolynomial& p) {
    return constant(s) * p;
  }
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

 private:
  std::map<Exponent, mpq_class> terms_;
};

}  // namespace ptf
