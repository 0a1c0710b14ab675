#pragma once

/// Builders for the symmetric extremal functions f*_{n,d} and for the
/// hypersensitive families that beat them, each with a closed-form
/// dichromatic count.
///
/// The hypersensitive families factor through a quotient of the cube: the
/// inputs are split into two blocks of sizes (b1, b2) and a point maps to the
/// grid vertex (sum of block 1, offset + sum of block 2). A sign table on the
/// grid lifts to a function on the cube, and its dichromatic count is the sum
/// over dichromatic grid edges of the number of cube edges mapping onto them.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ptf/boolean_function.hpp"
#include "ptf/combinatorics.hpp"
#include "ptf/polynomial.hpp"

namespace ptf {

// ---------------------------------------------------------------------------
// f*_{n,d}

/// The d integers closest to 0 with parity opposite to n, ascending. Ties
/// between r and -r go to the positive root.
struct RootList {
  int n = 0;
  int d = 0;
  std::vector<int> roots;
};

inline void check_degree(int n, int d) {
  detail::check_vars(n);
  if (d < 0 || d > n) {
    throw std::domain_error("degree " + std::to_string(d) + " outside [0, n=" + std::to_string(n) + "]");
  }
}

inline RootList gl_roots(int n, int d) {
  check_degree(n, d);
  RootList rl{n, d, {}};
  // Candidates ordered by |r|, positive first.
  const int first = (n % 2 == 0) ? 1 : 0;
  for (int mag = first; static_cast<int>(rl.roots.size()) < d; mag += 2) {
    rl.roots.push_back(mag);
    if (mag != 0 && static_cast<int>(rl.roots.size()) < d) rl.roots.push_back(-mag);
  }
  std::sort(rl.roots.begin(), rl.roots.end());
  return rl;
}

// sgn(prod_r (s - r)) for s never equal to a root.
inline Sign sign_of_root_product(const std::vector<int>& roots, int s) {
  int above = 0;
  for (int r : roots) {
    if (r == s) throw std::domain_error("evaluation at a root");
    if (r > s) ++above;
  }
  return above % 2 == 0 ? Sign::Positive : Sign::Negative;
}

inline LayerSignPattern gl_pattern(const RootList& rl) {
  std::vector<Sign> signs;
  for (int k = 0; k <= rl.n; ++k) signs.push_back(sign_of_root_product(rl.roots, sum_from_weight(k, rl.n)));
  return LayerSignPattern(rl.n, std::move(signs));
}

/// f*_{n,d}(x) = sgn(p*_{n,d}(x_1 + ... + x_n)).
inline std::pair<BooleanFunction, RootList> gl_extremal(int n, int d) {
  RootList rl = gl_roots(n, d);
  return {symmetric_from_pattern(gl_pattern(rl)), std::move(rl)};
}

/// D[f*_{n,d}] = sum over roots r of C(n, (n+r-1)/2) (n-r+1)/2: the edges
/// between the layers with coordinate sums r-1 and r+1.
inline std::uint64_t gl_extremal_count(int n, int d) {
  const RootList rl = gl_roots(n, d);
  std::uint64_t total = 0;
  for (int r : rl.roots) total += binomial(n, (n + r - 1) / 2) * static_cast<std::uint64_t>((n - r + 1) / 2);
  return total;
}

// ---------------------------------------------------------------------------
// Quotient grid

struct QuotientGraphSpec {
  int b1 = 0;
  int b2 = 0;
  int offset = 0;

  int num_vars() const { return b1 + b2; }
  // Grid coordinates of the vertex with i positive inputs in block 1 and j in block 2.
  int x_of(int i) const { return 2 * i - b1; }
  int y_of(int j) const { return offset + 2 * j - b2; }
  friend bool operator==(const QuotientGraphSpec&, const QuotientGraphSpec&) = default;
};

/// Signs on the reachable grid vertices, indexed by (i, j) with 0 <= i <= b1, 0 <= j <= b2.
class GridSigns {
 public:
  GridSigns(QuotientGraphSpec spec, std::vector<Sign> values) : spec_(spec), values_(std::move(values)) {
    if (spec_.b1 < 1 || spec_.b2 < 1) throw std::invalid_argument("grid blocks must be nonempty");
    const auto expected = static_cast<std::size_t>((spec_.b1 + 1) * (spec_.b2 + 1));
    if (values_.size() != expected) {
      throw std::invalid_argument("grid table has " + std::to_string(values_.size()) + " entries, expected " +
                                  std::to_string(expected));
    }
  }

  // Tabulates sign(x, y) over the reachable band.
  template <class SignAt>
  static GridSigns tabulate(QuotientGraphSpec spec, SignAt&& sign_at) {
    std::vector<Sign> values;
    for (int i = 0; i <= spec.b1; ++i) {
      for (int j = 0; j <= spec.b2; ++j) values.push_back(sign_at(spec.x_of(i), spec.y_of(j)));
    }
    return GridSigns(spec, std::move(values));
  }

  const QuotientGraphSpec& spec() const { return spec_; }
  Sign at(int i, int j) const { return values_[static_cast<std::size_t>(i * (spec_.b2 + 1) + j)]; }

  friend bool operator==(const GridSigns&, const GridSigns&) = default;

 private:
  QuotientGraphSpec spec_;
  std::vector<Sign> values_;
};

/// The function x -> grid(phi(x)); block 1 is the lowest b1 variables.
inline BooleanFunction lift(const GridSigns& grid) {
  const auto& s = grid.spec();
  const std::size_t block1 = (std::size_t{1} << s.b1) - 1;
  return BooleanFunction::from_predicate(s.num_vars(), [&](std::size_t idx) {
    return grid.at(hamming_weight(idx & block1), hamming_weight(idx >> s.b1)) == Sign::Positive;
  });
}

/// Sum over dichromatic grid edges of the size of their preimage in the cube.
/// Edge (i,j)-(i,j+1) has C(b1,i) C(b2,j) (b2-j) preimages; edge (i,j)-(i+1,j)
/// has C(b1,i) C(b2,j) (b1-i).
inline std::uint64_t quotient_count(const GridSigns& grid) {
  const auto& s = grid.spec();
  std::uint64_t total = 0;
  for (int i = 0; i <= s.b1; ++i) {
    for (int j = 0; j <= s.b2; ++j) {
      const std::uint64_t here = binomial(s.b1, i) * binomial(s.b2, j);
      if (j < s.b2 && grid.at(i, j) != grid.at(i, j + 1)) total += here * static_cast<std::uint64_t>(s.b2 - j);
      if (i < s.b1 && grid.at(i, j) != grid.at(i + 1, j)) total += here * static_cast<std::uint64_t>(s.b1 - i);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Degree 2, odd n

// q(x, y) = 3y^2 - x^2 + 2xy + y - x - 3
inline std::int64_t hsf_quadratic(std::int64_t x, std::int64_t y) {
  return 3 * y * y - x * x + 2 * x * y + y - x - 3;
}

inline BivariatePolynomial hsf_quadratic_polynomial() {
  BivariatePolynomial q;
  q.add_term(0, 2, 3);
  q.add_term(2, 0, -1);
  q.add_term(1, 1, 2);
  q.add_term(0, 1, 1);
  q.add_term(1, 0, -1);
  q.add_term(0, 0, -3);
  return q;
}

/// f_{5,2} = sgn q(x1 + x2, x3 + x4 + x5), evaluated pointwise.
inline BooleanFunction build_hsf_5_2() {
  return BooleanFunction::from_predicate(5, [](std::size_t idx) {
    const auto x = point_of(idx, 5);
    return sign_of_nonzero(hsf_quadratic(x[0] + x[1], x[2] + x[3] + x[4])) == Sign::Positive;
  });
}

inline QuotientGraphSpec hsf_n_2_spec(int n) { return {2, n - 2, 0}; }

inline void check_hsf_n_2(int n) {
  if (n < 5 || n % 2 == 0) {
    throw std::domain_error("the degree-2 family needs odd n >= 5, got n=" + std::to_string(n));
  }
  detail::check_vars(n);
}

inline GridSigns hsf_n_2_grid(int n) {
  check_hsf_n_2(n);
  return GridSigns::tabulate(hsf_n_2_spec(n), [](int x, int y) { return sign_of_nonzero(hsf_quadratic(x, y)); });
}

/// f_{n,2} = sgn q(x1 + x2, x3 + ... + xn).
inline BooleanFunction build_hsf_n_2(int n) { return lift(hsf_n_2_grid(n)); }

/// C(n-2, (n-1)/2) (4n - 3).
inline std::uint64_t hsf_n_2_count_factored(int n) {
  check_hsf_n_2(n);
  return binomial(n - 2, (n - 1) / 2) * static_cast<std::uint64_t>(4 * n - 3);
}

/// n C(n, (n+1)/2) + C(n-2, (n+1)/2).
inline std::uint64_t hsf_n_2_count_expanded(int n) {
  check_hsf_n_2(n);
  return static_cast<std::uint64_t>(n) * binomial(n, (n + 1) / 2) + binomial(n - 2, (n + 1) / 2);
}

inline std::uint64_t hsf_n_2_count(int n) {
  const std::uint64_t a = hsf_n_2_count_factored(n);
  if (a != hsf_n_2_count_expanded(n)) throw std::logic_error("degree-2 count forms disagree");
  return a;
}

// ---------------------------------------------------------------------------
// General degree, n >= 7, 3 <= d <= n-3

inline bool same_parity(int n, int d) { return (n - d) % 2 == 0; }

inline void check_hsf_general(int n, int d) {
  detail::check_vars(n);
  if (n < 7) throw std::domain_error("the general family needs n >= 7, got n=" + std::to_string(n));
  if (d < 3) throw std::domain_error("the general family needs d >= 3, got d=" + std::to_string(d));
  if (same_parity(n, d) && d > n - 4) {
    throw std::domain_error("with n-d even the general family needs d <= n-4; (" + std::to_string(n) + "," +
                            std::to_string(d) + ") has d = n-" + std::to_string(n - d) +
                            ", where no hypersensitive function exists");
  }
  if (d > n - 3) {
    throw std::domain_error("the general family needs d <= n-3; (" + std::to_string(n) + "," + std::to_string(d) +
                            ") has d = n-" + std::to_string(n - d) + ", where no hypersensitive function exists");
  }
}

/// Blocks (3, n-3); the second coordinate is shifted by 1 when n-d is odd.
inline QuotientGraphSpec hsf_general_spec(int n, int d) { return {3, n - 3, same_parity(n, d) ? 0 : 1}; }

namespace detail {

// Arithmetic progression lo, lo+2, ..., hi (empty if lo > hi).
inline std::vector<int> step2(int lo, int hi) {
  std::vector<int> v;
  for (int r = lo; r <= hi; r += 2) v.push_back(r);
  return v;
}

inline std::vector<int> p3_roots(int d) { return step2(3 - d, d - 3); }
inline std::vector<int> p4_roots(int d) { return step2(4 - d, d - 4); }

}  // namespace detail

/// The component polynomials p1..p4, the perturbation epsilon and the assembled
/// p = (p1 + eps p2) p3 - eps^2 p4 on the grid A x B with A = {-3,-1,1,3}.
struct GeneralRecipe {
  int n = 0;
  int d = 0;
  QuotientGraphSpec spec;
  mpq_class epsilon;
  BivariatePolynomial p1, p2, p3, p4;
  BivariatePolynomial p;
};

inline GeneralRecipe general_recipe(int n, int d) {
  check_hsf_general(n, d);
  using P = BivariatePolynomial;
  GeneralRecipe r;
  r.n = n;
  r.d = d;
  r.spec = hsf_general_spec(n, d);
  mpz_class base = 4 * d;
  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d));
  r.epsilon = mpq_class(mpz_class(1), denom);
  r.p1 = P::product_of_y_roots({1 - d, d - 1});
  const P lin = P::constant(d - 1) * P::x() + P::y();
  r.p2 = P::constant(1) - P::constant(2) * lin * lin;
  r.p3 = P::product_of_y_roots(detail::p3_roots(d));
  r.p4 = P::x() * (P::x() + P::constant(2)) * (P::x() - P::constant(2)) * P::product_of_y_roots(detail::p4_roots(d));
  r.p = (r.p1 + r.epsilon * r.p2) * r.p3 - (r.epsilon * r.epsilon) * r.p4;
  return r;
}

namespace detail {

inline Sign p2_sign(int d, int x, int y) {
  const std::int64_t t = static_cast<std::int64_t>(x) * (d - 1) + y;
  return sign_of_nonzero(1 - 2 * t * t);
}

inline Sign p4_sign(int d, int x, int y) {
  return sign_of_nonzero(x * (x + 2) * (x - 2)) * sign_of_root_product(p4_roots(d), y);
}

}  // namespace detail

/// The integer-only piecewise form of g = sgn p on A x B:
///   (-1)^d              y < 1-d
///   sgn((-1)^d p2)      y = 1-d
///   -sgn(p4)            |y| < d-1   (there p3 = 0, so p = -eps^2 p4)
///   sgn(p2)             y = d-1
///   +1                  y > d-1
inline Sign general_piecewise_sign(int d, int x, int y) {
  const Sign parity_d = d % 2 == 0 ? Sign::Positive : Sign::Negative;
  if (y < 1 - d) return parity_d;
  if (y == 1 - d) return parity_d * detail::p2_sign(d, x, y);
  if (y < d - 1) return -detail::p4_sign(d, x, y);
  if (y == d - 1) return detail::p2_sign(d, x, y);
  return Sign::Positive;
}

inline GridSigns general_grid_piecewise(int n, int d) {
  check_hsf_general(n, d);
  return GridSigns::tabulate(hsf_general_spec(n, d), [d](int x, int y) { return general_piecewise_sign(d, x, y); });
}

/// Same grid computed as sgn(p) in exact arithmetic; throws if p vanishes.
inline GridSigns general_grid_polynomial(const GeneralRecipe& r) {
  return GridSigns::tabulate(r.spec, [&r](int x, int y) { return sign_of_nonzero(r.p(x, y)); });
}

/// f_{n,d} = g o phi (n-d even) or g o psi (n-d odd), from the piecewise form.
inline std::pair<BooleanFunction, GeneralRecipe> build_hsf_general(int n, int d) {
  GeneralRecipe r = general_recipe(n, d);
  return {lift(general_grid_piecewise(n, d)), std::move(r)};
}

/// Increment of D[f_{n,d}] over D[f*_{n,d}]:
///   n-d even: (2d-4) C(n-3, (n-d-4)/2)
///   n-d odd:  (d-3) C(n-3, (n-d-3)/2) + (d-1) C(n-3, (n-d-5)/2)
inline std::uint64_t hsf_general_increment(int n, int d) {
  check_hsf_general(n, d);
  const auto dd = static_cast<std::uint64_t>(d);
  if (same_parity(n, d)) return (2 * dd - 4) * binomial(n - 3, (n - d - 4) / 2);
  // (n-d-5)/2 may be -1 when d = n-3; C(., -1) = 0.
  const int k = n - d - 5;
  const std::uint64_t second = k < 0 ? 0 : binomial(n - 3, k / 2);
  return (dd - 3) * binomial(n - 3, (n - d - 3) / 2) + (dd - 1) * second;
}

inline std::uint64_t hsf_general_count(int n, int d) { return gl_extremal_count(n, d) + hsf_general_increment(n, d); }

/// Number of edges {u, v} of A x B on which g and g' = -f*_{n,d} o phi^{-1}
/// induce different edge labels g(u)g(v) != g'(u)g'(v). Counted on a band of
/// the unbounded grid wide enough to contain every disagreement.
inline int relabeled_edge_count(int n, int d) {
  check_hsf_general(n, d);
  const QuotientGraphSpec spec = hsf_general_spec(n, d);
  const RootList rl = gl_roots(n, d);
  auto g = [d](int x, int y) { return general_piecewise_sign(d, x, y); };
  auto gp = [&](int x, int y) { return -sign_of_root_product(rl.roots, x + y - spec.offset); };
  const int band = d + 7;
  // y has the parity of d + 1.
  int y_lo = -band;
  if ((y_lo - d - 1) % 2 != 0) --y_lo;
  int count = 0;
  for (int x = -3; x <= 3; x += 2) {
    for (int y = y_lo; y <= band; y += 2) {
      if (x + 2 <= 3 && (g(x, y) * g(x + 2, y)) != (gp(x, y) * gp(x + 2, y))) ++count;
      if (y + 2 <= band && (g(x, y) * g(x, y + 2)) != (gp(x, y) * gp(x, y + 2))) ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Separation

inline bool is_refuted_cell(int n, int d) {
  if (d == 2) return n >= 5 && n % 2 == 1;
  return n >= 7 && d >= 3 && d <= n - 3;
}

/// D[f_{n,d}] / D[f*_{n,d}] from the closed forms.
inline mpq_class separation_ratio(int n, int d) {
  if (!is_refuted_cell(n, d)) {
    throw std::domain_error("(" + std::to_string(n) + "," + std::to_string(d) + ") is not a refuted cell");
  }
  const std::uint64_t num = d == 2 ? hsf_n_2_count(n) : hsf_general_count(n, d);
  mpq_class r(to_mpz(num), to_mpz(gl_extremal_count(n, d)));
  r.canonicalize();
  return r;
}

}  // namespace ptf
