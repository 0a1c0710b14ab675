#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "ptf/certificates.hpp"
#include "ptf/constructions.hpp"
#include "ptf/symmetry.hpp"

using namespace ptf;

namespace {

// mpq_class(a, b) is not reduced on construction.
mpq_class ratio(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

// sgn p(x1+x2+x3, offset + x4+...+xn) evaluated from scratch in exact arithmetic.
BooleanFunction general_oracle(int n, int d) {
  const int offset = (n - d) % 2 == 0 ? 0 : 1;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(4 * d), static_cast<unsigned long>(d));
  const mpq_class eps(1, den);
  return oracle::tabulate(n, [&](const std::vector<int>& v) {
    const int x = v[0] + v[1] + v[2];
    int y = offset;
    for (int i = 3; i < n; ++i) y += v[static_cast<std::size_t>(i)];
    const mpq_class p1 = mpq_class((y - (1 - d)) * (y - (d - 1)));
    const int lin = (d - 1) * x + y;
    const mpq_class p2 = 1 - 2 * lin * lin;
    mpq_class p3 = 1;
    for (int r = 3 - d; r <= d - 3; r += 2) p3 *= y - r;
    mpq_class p4 = x * (x + 2) * (x - 2);
    for (int r = 4 - d; r <= d - 4; r += 2) p4 *= y - r;
    const mpq_class p = (p1 + eps * p2) * p3 - eps * eps * p4;
    EXPECT_NE(p, 0);
    return p > 0 ? 1 : -1;
  });
}

BooleanFunction quadratic_oracle(int n) {
  return oracle::tabulate(n, [n](const std::vector<int>& v) {
    const long x = v[0] + v[1];
    long y = 0;
    for (int i = 2; i < n; ++i) y += v[static_cast<std::size_t>(i)];
    return 3 * y * y - x * x + 2 * x * y + y - x - 3 > 0 ? 1 : -1;
  });
}

}  // namespace

TEST(Roots, TieBreakAndParity) {
  EXPECT_EQ(gl_roots(5, 2).roots, (std::vector<int>{0, 2}));
  EXPECT_EQ(gl_roots(5, 1).roots, (std::vector<int>{0}));
  EXPECT_EQ(gl_roots(6, 3).roots, (std::vector<int>{-1, 1, 3}));
  EXPECT_EQ(gl_roots(7, 3).roots, (std::vector<int>{-2, 0, 2}));
  for (int n = 1; n <= 14; ++n) {
    for (int d = 0; d <= n; ++d) {
      const auto rl = gl_roots(n, d);
      ASSERT_EQ(rl.roots, oracle::nearest_roots(n, d));
      for (int r : rl.roots) ASSERT_NE(((r - n) % 2 + 2) % 2, 0);
    }
  }
  EXPECT_THROW(gl_roots(4, 5), std::domain_error);
  EXPECT_THROW(gl_roots(4, -1), std::domain_error);
}

TEST(Extremal, Examples) {
  EXPECT_EQ(gl_extremal(5, 2).first, oracle::extremal(5, 2));
  EXPECT_EQ(gl_extremal_count(5, 2), 50U);
  EXPECT_EQ(gl_extremal_count(5, 1), 30U);
  EXPECT_EQ(gl_extremal_count(3, 2), 9U);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(gl_extremal(n, 0).first, BooleanFunction::constant(n, Sign::Positive));
    const auto top = gl_extremal(n, n).first;
    EXPECT_TRUE(top == BooleanFunction::parity(n) || top == -BooleanFunction::parity(n));
    EXPECT_EQ(gl_extremal_count(n, 0), 0U);
    // Odd n, d = 1: the middle layer cut.
    if (n % 2 == 1) EXPECT_EQ(gl_extremal_count(n, 1), (n - n / 2) * binomial(n, n / 2));
    if (n >= 2) EXPECT_EQ(gl_extremal_count(n, n - 1), static_cast<std::uint64_t>(n) * ((std::uint64_t{1} << (n - 1)) - 1));
  }
}

TEST(Extremal, BruteForceValues) {
  // Independent brute-force counts.
  EXPECT_EQ(gl_extremal_count(7, 3), 350U);
  EXPECT_EQ(gl_extremal_count(8, 3), 728U);
  EXPECT_EQ(gl_extremal_count(6, 3), 150U);
  EXPECT_EQ(gl_extremal_count(9, 3), 1638U);
  EXPECT_EQ(gl_extremal_count(10, 3), 3360U);
  EXPECT_EQ(gl_extremal_count(9, 5), 2142U);
  EXPECT_EQ(gl_extremal_count(4, 2), 24U);
}

TEST(Extremal, ClosedFormMatchesCount) {
  for (int n = 1; n <= 12; ++n) {
    for (int d = 0; d <= n; ++d) {
      const auto f = oracle::extremal(n, d);
      ASSERT_EQ(gl_extremal(n, d).first, f);
      ASSERT_EQ(gl_extremal_count(n, d), oracle::dichromatic(f)) << n << "," << d;
    }
  }
}

TEST(Extremal, ParityLifting) {
  for (int n = 2; n <= 14; ++n) {
    for (int d = 0; d <= n - 1; ++d) {
      if ((n - d) % 2 != 0) continue;
      mpq_class lifted = ratio(2 * n, n - 1) * mpq_class(to_mpz(gl_extremal_count(n - 1, d)));
      EXPECT_EQ(mpq_class(to_mpz(gl_extremal_count(n, d))), lifted) << n << "," << d;
    }
  }
}

TEST(Quadratic, FiveVariableConstruction) {
  const auto f = build_hsf_5_2();
  EXPECT_EQ(f, quadratic_oracle(5));
  EXPECT_EQ(dichromatic_count(f), 51U);
  EXPECT_TRUE(verify_primal(f, 2, hsf_5_2_certificate()));
  EXPECT_TRUE(equivalent(f, build_hsf_n_2(5)).has_value());
}

TEST(Quadratic, Family) {
  EXPECT_EQ(hsf_n_2_count(5), 51U);
  EXPECT_EQ(hsf_n_2_count(7), 250U);
  EXPECT_EQ(hsf_n_2_count(7), 7 * binomial(7, 4) + binomial(5, 4));
  EXPECT_EQ(dichromatic_count(build_hsf_n_2(7)), 250U);
  // Brute-force counts.
  EXPECT_EQ(dichromatic_count(quadratic_oracle(9)), 1155U);
  EXPECT_EQ(hsf_n_2_count(9), 1155U);
  EXPECT_EQ(hsf_n_2_count(11), 5166U);
  for (int n = 5; n <= 13; n += 2) {
    const auto f = build_hsf_n_2(n);
    ASSERT_EQ(f, quadratic_oracle(n));
    EXPECT_EQ(dichromatic_count(f), hsf_n_2_count(n));
    EXPECT_EQ(hsf_n_2_count_factored(n), hsf_n_2_count_expanded(n));
    EXPECT_GT(hsf_n_2_count(n), gl_extremal_count(n, 2));
    EXPECT_EQ(quotient_count(hsf_n_2_grid(n)), hsf_n_2_count(n));
  }
  EXPECT_THROW(build_hsf_n_2(6), std::domain_error);
  EXPECT_THROW(build_hsf_n_2(3), std::domain_error);
  EXPECT_THROW(hsf_n_2_count(8), std::domain_error);
}

TEST(General, BruteForceValues) {
  // Counts of sgn p lifted to the cube, computed independently.
  const std::vector<std::tuple<int, int, std::uint64_t>> known{
      {7, 3, 352}, {8, 3, 730}, {9, 3, 1650}, {10, 3, 3374}, {9, 5, 2148},
      {8, 4, 900}, {8, 5, 954}, {9, 4, 1899}, {9, 6, 2217}, {10, 6, 4928}};
  for (const auto& [n, d, count] : known) {
    EXPECT_EQ(hsf_general_count(n, d), count) << n << "," << d;
    EXPECT_EQ(dichromatic_count(build_hsf_general(n, d).first), count) << n << "," << d;
  }
  EXPECT_EQ(hsf_general_count(7, 3), gl_extremal_count(7, 3) + 2);
  EXPECT_EQ(hsf_general_count(8, 3), gl_extremal_count(8, 3) + 2);
  EXPECT_EQ(hsf_general_count(9, 5), gl_extremal_count(9, 5) + 6);
  EXPECT_EQ(hsf_general_count(10, 3), gl_extremal_count(10, 3) + 14);
}

TEST(General, MatchesPolynomialOracle) {
  for (int n = 7; n <= 10; ++n) {
    for (int d = 3; d <= n - 3; ++d) {
      if (same_parity(n, d) && d > n - 4) continue;
      ASSERT_EQ(build_hsf_general(n, d).first, general_oracle(n, d)) << n << "," << d;
    }
  }
}

TEST(General, DualPathAndCounts) {
  for (int n = 7; n <= 12; ++n) {
    for (int d = 3; d <= n - 3; ++d) {
      if (same_parity(n, d) && d > n - 4) continue;
      const auto [f, recipe] = build_hsf_general(n, d);
      EXPECT_EQ(general_grid_piecewise(n, d), general_grid_polynomial(recipe)) << n << "," << d;
      EXPECT_EQ(dichromatic_count(f), hsf_general_count(n, d));
      EXPECT_EQ(quotient_count(general_grid_piecewise(n, d)), hsf_general_count(n, d));
      EXPECT_GT(hsf_general_count(n, d), gl_extremal_count(n, d));
    }
  }
}

TEST(General, RecipeShape) {
  const auto r = general_recipe(9, 5);
  EXPECT_EQ(r.epsilon, mpq_class(1, 3200000));
  EXPECT_EQ(r.p1.total_degree(), 2);
  EXPECT_EQ(r.p2.total_degree(), 2);
  EXPECT_EQ(r.p3.total_degree(), 3);
  EXPECT_EQ(r.p4.total_degree(), 5);
  EXPECT_LE(r.p.total_degree(), 5);
  EXPECT_EQ(r.spec, (QuotientGraphSpec{3, 6, 0}));
  EXPECT_EQ(general_recipe(10, 5).spec, (QuotientGraphSpec{3, 7, 1}));
}

TEST(General, BandIsParityExceptTwoPoints) {
  // On 1-d <= y <= d-1, g times the vertex parity is constant except at (3, d-1) and (-3, 1-d).
  for (int d = 3; d <= 9; ++d) {
    std::set<int> regular;
    std::set<int> exceptional;
    for (int x = -3; x <= 3; x += 2) {
      for (int y = 1 - d; y <= d - 1; y += 2) {
        const int parity = ((x + 3) / 2 + (y + d - 1) / 2) % 2 == 0 ? 1 : -1;
        const int h = to_int(general_piecewise_sign(d, x, y)) * parity;
        const bool exception = (x == 3 && y == d - 1) || (x == -3 && y == 1 - d);
        (exception ? exceptional : regular).insert(h);
      }
    }
    ASSERT_EQ(regular.size(), 1U) << d;
    ASSERT_EQ(exceptional.size(), 1U) << d;
    EXPECT_NE(*regular.begin(), *exceptional.begin()) << d;
  }
}

TEST(General, Rejections) {
  EXPECT_THROW(build_hsf_general(7, 5), std::domain_error);  // n-d even with d > n-4
  EXPECT_THROW(build_hsf_general(7, 2), std::domain_error);
  EXPECT_THROW(build_hsf_general(6, 3), std::domain_error);
  EXPECT_THROW(build_hsf_general(8, 6), std::domain_error);
  EXPECT_THROW(hsf_general_count(9, 7), std::domain_error);
}

TEST(General, RelabeledEdges) {
  for (int n = 7; n <= 14; ++n) {
    for (int d = 3; d <= n - 3; ++d) {
      if (same_parity(n, d) && d > n - 4) continue;
      // Ten edges when n-d is even; the shifted grid used for odd n-d changes sixteen.
      EXPECT_EQ(relabeled_edge_count(n, d), same_parity(n, d) ? 10 : 16) << n << "," << d;
    }
  }
}

TEST(Quotient, EdgeConservation) {
  std::mt19937_64 rng(41);
  std::bernoulli_distribution coin(0.5);
  for (int n = 2; n <= 12; ++n) {
    for (int b1 = 1; b1 <= std::min(3, n - 1); ++b1) {
      for (int offset : {0, 1}) {
        const QuotientGraphSpec spec{b1, n - b1, offset};
        const auto grid = GridSigns::tabulate(spec, [&](int, int) { return sign_from_bit(coin(rng)); });
        ASSERT_EQ(quotient_count(grid), dichromatic_count(lift(grid)));
      }
    }
  }
  const auto ones = GridSigns::tabulate(QuotientGraphSpec{2, 3, 0}, [](int, int) { return Sign::Positive; });
  EXPECT_EQ(quotient_count(ones), 0U);
  EXPECT_EQ(quotient_count(hsf_n_2_grid(5)), 51U);
  EXPECT_EQ(quotient_count(general_grid_piecewise(9, 3)), dichromatic_count(build_hsf_general(9, 3).first));
  EXPECT_THROW(GridSigns(QuotientGraphSpec{2, 3, 0}, std::vector<Sign>(5, Sign::Positive)), std::invalid_argument);
}

TEST(Separation, Ratios) {
  EXPECT_EQ(separation_ratio(5, 2), mpq_class(51, 50));
  EXPECT_EQ(separation_ratio(7, 3), ratio(352, 350));
  EXPECT_THROW(separation_ratio(6, 2), std::domain_error);
  EXPECT_THROW(separation_ratio(8, 2), std::domain_error);
  EXPECT_THROW(separation_ratio(6, 3), std::domain_error);
  for (int n = 5; n <= 21; n += 2) {
    const mpq_class scaled = n * (separation_ratio(n, 2) - 1);
    // Exact closed form of the scaled gap, derived from the two counts.
    EXPECT_EQ(scaled, ratio(n - 3, 4 * n)) << n;
    EXPECT_GE(scaled, mpq_class(1, 10));
    EXPECT_LT(scaled, mpq_class(1, 4));
  }
}

TEST(Certificates, ExtremalAllDegrees) {
  for (int n = 1; n <= 9; ++n) {
    for (int d = 0; d <= n; ++d) {
      const auto f = gl_extremal(n, d).first;
      ASSERT_TRUE(verify_primal(f, d, gl_extremal_certificate(n, d))) << n << "," << d;
    }
  }
}

TEST(Certificates, Constructions) {
  EXPECT_TRUE(verify_primal(build_hsf_5_2(), 2, hsf_5_2_certificate()));
  for (int n = 5; n <= 9; n += 2) EXPECT_TRUE(verify_primal(build_hsf_n_2(n), 2, hsf_n_2_certificate(n)));
  for (auto [n, d] : std::vector<std::pair<int, int>>{{7, 3}, {8, 3}, {8, 4}, {9, 5}}) {
    EXPECT_TRUE(verify_primal(build_hsf_general(n, d).first, d, hsf_general_certificate(n, d)));
    // One degree lower the polynomial has too high a degree to certify.
    EXPECT_THROW(certificate_from_values(build_hsf_general(n, d).first, d - 1,
                                         std::vector<mpq_class>(std::size_t{1} << n, 0)),
                 std::domain_error);
  }
}

TEST(Recipes, RoundTrip) {
  std::vector<ConstructionRecipe> recipes{make_recipe(Family::GlExtremal, 6, 3), make_recipe(Family::Hsf52, 5, 2),
                                          make_recipe(Family::HsfN2, 7, 2), make_recipe(Family::HsfGeneral, 9, 5),
                                          make_recipe(Family::HsfGeneral, 10, 3)};
  const std::vector<BooleanFunction> expected{gl_extremal(6, 3).first, build_hsf_5_2(), build_hsf_n_2(7),
                                              build_hsf_general(9, 5).first, build_hsf_general(10, 3).first};
  for (std::size_t k = 0; k < recipes.size(); ++k) {
    const auto text = to_json(recipes[k]).dump();
    const auto back = recipe_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(rebuild(back), expected[k]) << text;
    EXPECT_EQ(to_json(back).dump(), text);
    if (recipes[k].family != Family::GlExtremal) {
      EXPECT_TRUE(verify_primal(expected[k], recipes[k].d, recipe_certificate(back)));
    }
  }
  EXPECT_THROW(parse_family("hsf-9-9"), std::invalid_argument);
  EXPECT_THROW(make_recipe(Family::HsfGeneral, 7, 5), std::domain_error);
}
