#pragma once

/// Exact decision of "is f a degree-d PTF?".
///
/// f is a degree-d PTF iff some multilinear p of degree <= d has f(x) p(x) >= 1
/// on every point (the domain is finite, so strict sign agreement can be
/// rescaled to margin 1). By Farkas' lemma this fails iff there are weights
/// lambda_x >= 0, not all zero, with sum_x lambda_x f(x) chi_S(x) = 0 for every
/// |S| <= d. The solver runs phase 1 of a rational simplex on the lambda
/// system; its optimal basis yields either lambda (infeasible) or, through the
/// dual values, realizing weights (feasible). Both come back as certificates
/// that the independent verifiers below accept or reject.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ptf/boolean_function.hpp"
#include "ptf/combinatorics.hpp"

namespace ptf {

/// All S subset of {0..n-1} with |S| <= d, by degree then lexicographically.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d) : n_(n), d_(d) {
    detail::check_vars(n);
    if (d < 0 || d > n) throw std::domain_error("basis degree outside [0, n]");
    for (int k = 0; k <= d; ++k) {
      // Lexicographic order of k-subsets = choose elements left to right.
      std::vector<int> pick(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
      for (;;) {
        std::uint32_t mask = 0;
        for (int e : pick) mask |= 1U << e;
        position_.emplace(mask, masks_.size());
        masks_.push_back(mask);
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }

  int num_vars() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return masks_.size(); }
  std::uint32_t mask(std::size_t k) const { return masks_[k]; }
  const std::vector<std::uint32_t>& masks() const { return masks_; }

  std::size_t position(std::uint32_t mask) const {
    auto it = position_.find(mask);
    if (it == position_.end()) throw std::out_of_range("monomial not in basis");
    return it->second;
  }

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

 private:
  int n_;
  int d_;
  std::vector<std::uint32_t> masks_;
  std::unordered_map<std::uint32_t, std::size_t> position_;
};

// chi_S(x) = prod_{i in S} x_i, with x_i = -1 where bit i of idx is clear.
inline int character(std::uint32_t mask, std::size_t idx) {
  return std::popcount(mask & ~static_cast<std::uint32_t>(idx)) % 2 == 0 ? 1 : -1;
}

/// Realizing weights: coefficient k multiplies chi of basis monomial k.
struct PtfCertificate {
  int n = 0;
  int d = 0;
  std::vector<mpq_class> coefficients;
};

/// Farkas multipliers lambda_x, one per point index.
struct InfeasibilityCertificate {
  int n = 0;
  int d = 0;
  std::vector<mpq_class> multipliers;
};

using FeasibilityResult = std::variant<PtfCertificate, InfeasibilityCertificate>;

inline bool is_feasible(const FeasibilityResult& r) { return std::holds_alternative<PtfCertificate>(r); }

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct LpLimits {
  int max_vars = 14;
  std::size_t max_tableau_entries = std::size_t{1} << 22;
};

namespace detail {

// In-place transform of a 2^n array between monomial coefficients (indexed by
// S) and point values (indexed by x): values[x] = sum_S coeff[S] chi_S(x).
template <class T>
void coefficients_to_values(std::vector<T>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j & h) continue;
      T u = a[j];
      a[j] = u - a[j | h];
      a[j | h] = u + a[j | h];
    }
  }
}

// Correlations: out[S] = sum_x a[x] chi_S(x) (the unnormalised inverse).
template <class T>
void values_to_correlations(std::vector<T>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j & h) continue;
      T u = a[j];
      a[j] = u + a[j | h];
      a[j | h] = a[j | h] - u;
    }
  }
}

inline mpz_class common_denominator(const std::vector<mpq_class>& v) {
  mpz_class l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Phase-1 simplex on { lambda >= 0 : A lambda = e_last } with Bland's rule.
class FarkasSimplex {
 public:
  FarkasSimplex(const BooleanFunction& f, const MonomialBasis& basis)
      : points_(f.size()), rows_(basis.size() + 1), cols_(points_ + rows_),
        tab_(rows_ * cols_), rhs_(rows_, 0), cost_(cols_, 0), basic_(rows_) {
    for (std::size_t s = 0; s < basis.size(); ++s) {
      for (std::size_t x = 0; x < points_; ++x) {
        at(s, x) = character(basis.mask(s), x) * to_int(f.at(x));
      }
    }
    for (std::size_t x = 0; x < points_; ++x) at(rows_ - 1, x) = 1;
    rhs_[rows_ - 1] = 1;
    for (std::size_t i = 0; i < rows_; ++i) {
      at(i, points_ + i) = 1;
      basic_[i] = points_ + i;
    }
    // Reduced costs for objective sum of artificials: r_j = c_j - sum_i T_ij.
    for (std::size_t j = 0; j < points_; ++j) {
      mpq_class r = 0;
      for (std::size_t i = 0; i < rows_; ++i) r -= at(i, j);
      cost_[j] = r;
    }
    objective_ = 1;
  }

  void solve() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;
      std::size_t leave = rows_;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (at(i, enter) <= 0) continue;
        mpq_class ratio = rhs_[i] / at(i, enter);
        if (leave == rows_ || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      // Phase 1 is bounded below by 0, so some row always qualifies.
      if (leave == rows_) throw std::logic_error("phase-1 simplex reported unbounded");
      pivot(leave, enter);
    }
  }

  const mpq_class& objective() const { return objective_; }

  std::vector<mpq_class> primal() const {
    std::vector<mpq_class> lambda(points_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basic_[i] < points_) lambda[basic_[i]] = rhs_[i];
    }
    return lambda;
  }

  // Simplex multipliers y = c_B B^{-1}; artificial i has cost 1, so y_i = 1 - r_i.
  std::vector<mpq_class> duals() const {
    std::vector<mpq_class> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = 1 - cost_[points_ + i];
    return y;
  }

 private:
  mpq_class& at(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const { return tab_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t c) {
    const mpq_class p = at(r, c);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(r, j) != 0) at(r, j) /= p;
    }
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const mpq_class factor = at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (at(r, j) != 0) at(i, j) -= factor * at(r, j);
      }
      rhs_[i] -= factor * rhs_[r];
    }
    const mpq_class factor = cost_[c];
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(r, j) != 0) cost_[j] -= factor * at(r, j);
    }
    objective_ += factor * rhs_[r];
    basic_[r] = c;
  }

  std::size_t points_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> tab_;
  std::vector<mpq_class> rhs_;
  std::vector<mpq_class> cost_;
  std::vector<std::size_t> basic_;
  mpq_class objective_;
};

}  // namespace detail

/// Rescales nonnegative multipliers to coprime integers.
inline std::vector<mpq_class> to_coprime_integers(std::vector<mpq_class> v) {
  const mpz_class l = detail::common_denominator(v);
  mpz_class g = 0;
  for (auto& q : v) {
    q *= l;
    q.canonicalize();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g > 1) {
    for (auto& q : v) q /= g;
  }
  return v;
}

/// Decides whether f is a degree-d PTF and returns the matching certificate.
inline FeasibilityResult ptf_feasibility(const BooleanFunction& f, int d, const LpLimits& limits = {}) {
  const int n = f.num_vars();
  if (d < 0 || d > n) throw std::domain_error("degree " + std::to_string(d) + " outside [0, n]");
  if (n > limits.max_vars) {
    throw SizeCapExceeded("LP limited to n <= " + std::to_string(limits.max_vars) + ", got n=" + std::to_string(n));
  }
  const MonomialBasis basis(n, d);
  const std::size_t entries = (basis.size() + 1) * (f.size() + basis.size() + 1);
  if (entries > limits.max_tableau_entries) {
    throw SizeCapExceeded("LP tableau of " + std::to_string(entries) + " entries exceeds the cap of " +
                          std::to_string(limits.max_tableau_entries));
  }
  detail::FarkasSimplex lp(f, basis);
  lp.solve();
  if (lp.objective() == 0) {
    return InfeasibilityCertificate{n, d, to_coprime_integers(lp.primal())};
  }
  // Duals (u, t) satisfy sum_S u_S f(x) chi_S(x) + t <= 0 with t = objective > 0,
  // so c = -u / t has f(x) p_c(x) >= 1.
  const std::vector<mpq_class> y = lp.duals();
  const mpq_class t = y.back();
  PtfCertificate cert{n, d, {}};
  cert.coefficients.reserve(basis.size());
  for (std::size_t s = 0; s < basis.size(); ++s) cert.coefficients.push_back(-y[s] / t);
  return cert;
}

/// sum_S c_S chi_S(x).
inline mpq_class evaluate_multilinear(const PtfCertificate& c, std::span<const int> x) {
  if (x.size() != static_cast<std::size_t>(c.n)) throw std::invalid_argument("point dimension mismatch");
  const MonomialBasis basis(c.n, c.d);
  if (c.coefficients.size() != basis.size()) throw std::invalid_argument("coefficient count does not match basis");
  const std::size_t idx = index_of(x);
  mpq_class sum = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (character(basis.mask(k), idx) > 0) sum += c.coefficients[k];
    else sum -= c.coefficients[k];
  }
  return sum;
}

/// Values of p_c at all 2^n points, scaled by the common denominator L of
/// the coefficients. Returns (values, L).
inline std::pair<std::vector<mpz_class>, mpz_class> scaled_point_values(const PtfCertificate& c) {
  const MonomialBasis basis(c.n, c.d);
  if (c.coefficients.size() != basis.size()) throw std::invalid_argument("coefficient count does not match basis");
  const mpz_class l = detail::common_denominator(c.coefficients);
  std::vector<mpz_class> a(std::size_t{1} << c.n, 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    mpq_class scaled = c.coefficients[k] * l;
    scaled.canonicalize();
    a[basis.mask(k)] = scaled.get_num();
  }
  detail::coefficients_to_values(a);
  return {std::move(a), l};
}

/// f(x) p_c(x) >= 1 at every point, in exact arithmetic.
inline bool verify_primal(const BooleanFunction& f, int d, const PtfCertificate& c) {
  if (c.n != f.num_vars() || c.d != d) throw std::invalid_argument("certificate basis does not match (n, d)");
  const auto [values, l] = scaled_point_values(c);
  for (std::size_t x = 0; x < values.size(); ++x) {
    const mpz_class margin = f.at(x) == Sign::Positive ? values[x] : mpz_class(-values[x]);
    if (margin < l) return false;
  }
  return true;
}

/// lambda >= 0, sum lambda > 0 and sum_x lambda_x f(x) chi_S(x) = 0 for all |S| <= d.
inline bool verify_farkas(const BooleanFunction& f, int d, const InfeasibilityCertificate& lambda) {
  if (lambda.n != f.num_vars() || lambda.multipliers.size() != f.size()) {
    throw std::invalid_argument("multipliers not indexed by the points of f");
  }
  if (lambda.d != d) throw std::invalid_argument("certificate degree does not match");
  mpq_class total = 0;
  std::vector<mpq_class> w(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (lambda.multipliers[x] < 0) return false;
    total += lambda.multipliers[x];
    w[x] = f.at(x) == Sign::Positive ? lambda.multipliers[x] : mpq_class(-lambda.multipliers[x]);
  }
  if (total <= 0) return false;
  detail::values_to_correlations(w);
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (std::popcount(s) <= d && w[s] != 0) return false;
  }
  return true;
}

/// Realizing weights for f from the values of a real polynomial P at every
/// point. Throws if P has multilinear degree above d or does not sign f
/// strictly; the result is rescaled to margin exactly 1.
inline PtfCertificate certificate_from_values(const BooleanFunction& f, int d, std::vector<mpq_class> values) {
  const int n = f.num_vars();
  if (values.size() != f.size()) throw std::invalid_argument("one value per point required");
  mpq_class margin;
  bool first = true;
  for (std::size_t x = 0; x < values.size(); ++x) {
    const mpq_class m = f.at(x) == Sign::Positive ? values[x] : mpq_class(-values[x]);
    if (m <= 0) throw std::domain_error("polynomial does not sign the function strictly");
    if (first || m < margin) margin = m;
    first = false;
  }
  detail::values_to_correlations(values);
  mpz_class size = 1;
  size <<= static_cast<unsigned>(n);
  const MonomialBasis basis(n, d);
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (std::popcount(s) > d && values[s] != 0) {
      throw std::domain_error("polynomial has multilinear degree above " + std::to_string(d));
    }
  }
  PtfCertificate cert{n, d, {}};
  cert.coefficients.reserve(basis.size());
  for (std::uint32_t mask : basis.masks()) {
    mpq_class c = values[mask] / (margin * size);
    c.canonicalize();
    cert.coefficients.push_back(c);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Certificate file format:
//   ptf-cert n=<n> d=<d> kind=<primal|farkas>
//   <index> <numerator>/<denominator>
// Primal indices are basis positions, Farkas indices are point indices.
// Omitted indices are zero.

inline std::string rational_text(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline void write_certificate(std::ostream& os, const FeasibilityResult& r) {
  std::visit(
      [&os](const auto& cert) {
        using T = std::decay_t<decltype(cert)>;
        constexpr bool primal = std::is_same_v<T, PtfCertificate>;
        const auto& entries = [&]() -> const std::vector<mpq_class>& {
          if constexpr (primal) return cert.coefficients;
          else return cert.multipliers;
        }();
        os << "ptf-cert n=" << cert.n << " d=" << cert.d << " kind=" << (primal ? "primal" : "farkas") << "\n";
        for (std::size_t k = 0; k < entries.size(); ++k) os << k << " " << rational_text(entries[k]) << "\n";
      },
      r);
}

inline std::string certificate_text(const FeasibilityResult& r) {
  std::ostringstream os;
  write_certificate(os, r);
  return os.str();
}

inline FeasibilityResult read_certificate(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty certificate");
  std::istringstream header(line);
  std::string magic, nf, df, kf;
  header >> magic >> nf >> df >> kf;
  if (magic != "ptf-cert" || nf.rfind("n=", 0) != 0 || df.rfind("d=", 0) != 0 || kf.rfind("kind=", 0) != 0) {
    throw std::invalid_argument("malformed certificate header '" + line + "'");
  }
  int n = 0;
  int d = 0;
  try {
    n = std::stoi(nf.substr(2));
    d = std::stoi(df.substr(2));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed certificate header '" + line + "'");
  }
  detail::check_vars(n);
  if (d < 0 || d > n) throw std::invalid_argument("certificate degree out of range");
  const std::string kind = kf.substr(5);
  if (kind != "primal" && kind != "farkas") throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  const std::size_t count = kind == "primal" ? MonomialBasis(n, d).size() : std::size_t{1} << n;
  std::vector<mpq_class> entries(count, 0);
  std::vector<bool> seen(count, false);
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    std::size_t index = 0;
    std::string value;
    if (!(ls >> index >> value)) throw std::invalid_argument("malformed certificate line '" + line + "'");
    if (index >= count) throw std::invalid_argument("certificate index out of range");
    if (seen[index]) throw std::invalid_argument("duplicate certificate index");
    seen[index] = true;
    mpq_class q;
    if (q.set_str(value, 10) != 0) throw std::invalid_argument("malformed rational '" + value + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    entries[index] = q;
  }
  if (kind == "primal") return PtfCertificate{n, d, std::move(entries)};
  return InfeasibilityCertificate{n, d, std::move(entries)};
}

}  // namespace ptf
