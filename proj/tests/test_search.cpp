#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptf/hsf_search.hpp"
#include "ptf/report.hpp"

using namespace ptf;

namespace {

// Does some (k)-dimensional subcube restriction of f equal +-parity? Straight from the definition.
bool has_parity_subcube(const BooleanFunction& f, int k) {
  const int n = f.num_vars();
  for (std::uint32_t free = 0; free < (1U << n); ++free) {
    if (std::popcount(free) != k) continue;
    for (std::size_t fixed = 0; fixed < f.size(); ++fixed) {
      if ((fixed & free) != 0) continue;
      int sign = 0;
      bool all = true;
      for (std::size_t sub = 0; sub < f.size() && all; ++sub) {
        if ((sub & ~static_cast<std::size_t>(free)) != 0) continue;
        const auto x = oracle::point(fixed | sub, n);
        int chi = 1;
        for (int i = 0; i < n; ++i) {
          if ((free >> i) & 1U) chi *= x[static_cast<std::size_t>(i)];
        }
        const int v = oracle::value(f, x) * chi;
        if (sign == 0) sign = v;
        all = v == sign;
      }
      if (all) return true;
    }
  }
  return false;
}

std::vector<std::uint64_t> stage_counts(const SearchOutcome& o) {
  std::vector<std::uint64_t> v{o.stages.front().candidates_in};
  for (const auto& s : o.stages) v.push_back(s.survivors_out);
  return v;
}

}  // namespace

TEST(KnownMax, Values) {
  EXPECT_EQ(known_max_count(4, 4), 32U);
  EXPECT_EQ(known_max_count(5, 2), 51U);
  EXPECT_EQ(known_max_count(5, 1), gl_extremal_count(5, 1));
  EXPECT_EQ(known_max_count(6, 2), gl_extremal_count(6, 2));
  EXPECT_FALSE(known_max_count(7, 2).has_value());
  EXPECT_FALSE(known_max_count(8, 3).has_value());
}

TEST(NecessaryFilters, Examples) {
  for (int n = 2; n <= 7; ++n) {
    EXPECT_FALSE(necessary_filters(BooleanFunction::parity(n), n - 1));
    for (int d = 0; d <= n; ++d) EXPECT_TRUE(necessary_filters(gl_extremal(n, d).first, d)) << n << "," << d;
  }
  EXPECT_TRUE(necessary_filters(build_hsf_5_2(), 2));
  EXPECT_EQ(necessary_filter_verdict(BooleanFunction::parity(4), 2), FilterVerdict::ParitySubcube);
}

TEST(NecessaryFilters, ParitySubcubeMatchesDefinition) {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 4;
    const int d = rep % n;
    const auto f = oracle::random_function(n, rng);
    const bool sub = has_parity_subcube(f, d + 1);
    if (sub) {
      EXPECT_EQ(necessary_filter_verdict(f, d), FilterVerdict::ParitySubcube);
    } else {
      EXPECT_NE(necessary_filter_verdict(f, d), FilterVerdict::ParitySubcube);
    }
  }
}

TEST(NecessaryFilters, NeverRejectAPtf) {
  // Soundness on every class of 4-variable functions.
  for (std::uint64_t t = 0; t < (1U << 16); ++t) {
    if (!is_orbit_minimum(t, 4)) continue;
    const auto f = BooleanFunction::from_words(4, {t});
    for (int d = 0; d <= 4; ++d) {
      if (!necessary_filters(f, d)) ASSERT_FALSE(is_feasible(ptf_feasibility(f, d))) << t << " d=" << d;
    }
  }
  std::mt19937_64 rng(60);
  EXPECT_TRUE(necessary_filters(apply(random_signed_permutation(5, rng), build_hsf_5_2()), 2));
}

TEST(BoundedSearch, SmallCellsFrozenCounts) {
  struct Row {
    int n, d;
    std::vector<std::uint64_t> counts;
  };
  // tables, above D*, classes, after filters, PTF classes
  const std::vector<Row> rows{{3, 1, {256, 96, 5, 0, 0}},
                              {4, 1, {65536, 56598, 176, 8, 0}},
                              {4, 2, {65536, 98, 3, 0, 0}},
                              {4, 3, {65536, 2, 1, 0, 0}}};
  for (const auto& r : rows) {
    const auto o = bounded_search(r.n, r.d);
    EXPECT_EQ(o.verdict, Verdict::NoHsfFound) << r.n << "," << r.d;
    EXPECT_EQ(stage_counts(o), r.counts) << r.n << "," << r.d;
    ASSERT_EQ(o.stages.size(), 4U);
    EXPECT_EQ(o.stages[0].stage, "dichromatic-count");
    EXPECT_EQ(o.stages[3].stage, "exact-lp");
  }
}

TEST(BoundedSearch, NoHsfForTinyCells) {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= n; ++d) {
      const auto o = bounded_search(n, d);
      EXPECT_EQ(o.verdict, Verdict::NoHsfFound) << n << "," << d;
      EXPECT_TRUE(o.representatives.empty());
    }
  }
}

TEST(BoundedSearch, StagesShrink) {
  for (int d = 1; d <= 3; ++d) {
    const auto o = bounded_search(4, d);
    for (std::size_t k = 0; k < o.stages.size(); ++k) {
      EXPECT_LE(o.stages[k].survivors_out, o.stages[k].candidates_in);
      if (k > 0) EXPECT_EQ(o.stages[k].candidates_in, o.stages[k - 1].survivors_out);
    }
  }
}

TEST(BoundedSearch, FiltersDoNotChangeTheAnswer) {
  for (int d = 1; d <= 3; ++d) {
    SearchOptions off;
    off.necessary_filters = false;
    const auto with = bounded_search(4, d);
    const auto without = bounded_search(4, d, off);
    EXPECT_EQ(with.verdict, without.verdict);
    EXPECT_EQ(without.stages[2].survivors_out, without.stages[2].candidates_in);
    EXPECT_GE(without.stages[3].candidates_in, with.stages[3].candidates_in);
  }
}

TEST(BoundedSearch, ThreadCountIndependent) {
  SearchOptions one;
  SearchOptions two;
  two.threads = 2;
  const auto a = bounded_search(4, 1, one);
  const auto b = bounded_search(4, 1, two);
  EXPECT_EQ(stage_counts(a), stage_counts(b));
  for (std::size_t k = 0; k < a.stages.size(); ++k) EXPECT_EQ(a.stages[k].witnesses, b.stages[k].witnesses);
  EXPECT_EQ(to_json(a, false), to_json(b, false));
}

TEST(BoundedSearch, BudgetsMakeItInconclusive) {
  SearchOptions opt;
  opt.budget.max_tables = 1000;
  auto o = bounded_search(4, 1, opt);
  EXPECT_EQ(o.verdict, Verdict::Inconclusive);
  EXPECT_EQ(o.stages[0].candidates_in, 1000U);
  opt = {};
  opt.budget.max_lp_calls = 2;
  opt.necessary_filters = false;
  o = bounded_search(4, 1, opt);
  EXPECT_EQ(o.verdict, Verdict::Inconclusive);
  opt = {};
  opt.budget.max_classes = 10;
  o = bounded_search(4, 1, opt);
  EXPECT_EQ(o.verdict, Verdict::Inconclusive);
  EXPECT_THROW(bounded_search(7, 2), std::out_of_range);
}

TEST(BoundedSearch, SixVariablesNeedABudget) {
  SearchOptions opt;
  opt.budget.max_tables = std::uint64_t{1} << 16;
  const auto o = bounded_search(6, 2, opt);
  EXPECT_EQ(o.verdict, Verdict::Inconclusive);
  EXPECT_EQ(o.stages[0].candidates_in, std::uint64_t{1} << 16);
}

TEST(GeneratorSearch, FindsTheQuadraticClass) {
  std::mt19937_64 rng(62);
  std::vector<BooleanFunction> pool{gl_extremal(5, 2).first, BooleanFunction::parity(5)};
  for (int k = 0; k < 5; ++k) pool.push_back(apply(random_signed_permutation(5, rng), build_hsf_5_2()));
  for (int k = 0; k < 20; ++k) pool.push_back(oracle::random_function(5, rng));
  std::size_t i = 0;
  const auto o = bounded_search(5, 2, [&]() -> std::optional<BooleanFunction> {
    if (i == pool.size()) return std::nullopt;
    return pool[i++];
  });
  ASSERT_EQ(o.verdict, Verdict::HsfClassesFound);
  ASSERT_EQ(o.representatives.size(), 1U);
  EXPECT_EQ(o.representatives[0].dichromatic, 51U);
  EXPECT_TRUE(equivalent(o.representatives[0].function, build_hsf_5_2()).has_value());
  EXPECT_EQ(o.stages[0].candidates_in, pool.size());

  std::size_t j = 0;
  const auto none = bounded_search(5, 2, [&]() -> std::optional<BooleanFunction> {
    if (j == 3) return std::nullopt;
    ++j;
    return gl_extremal(5, 2).first;
  });
  EXPECT_EQ(none.verdict, Verdict::Inconclusive);
}

TEST(UniquenessClaim, Checks) {
  SearchOutcome o;
  o.n = 5;
  o.d = 2;
  o.verdict = Verdict::HsfClassesFound;
  const auto f = build_hsf_5_2();
  o.representatives.push_back({f, 51, std::get<PtfCertificate>(ptf_feasibility(f, 2))});
  EXPECT_TRUE(matches_uniqueness_claim(o));
  o.representatives.push_back(o.representatives[0]);
  EXPECT_FALSE(matches_uniqueness_claim(o));
  o.representatives.pop_back();
  o.representatives[0].function = gl_extremal(5, 2).first;
  EXPECT_FALSE(matches_uniqueness_claim(o));
}

TEST(SixTwo, BoundReplay) {
  const auto b = six_two_bounds();
  EXPECT_EQ(b.restriction_bound, mpq_class(612, 5));
  EXPECT_EQ(b.extremal_6_2, 120U);
  EXPECT_EQ(b.forced_count, 122U);
  EXPECT_EQ(b.mean_restriction_count, mpq_class(305, 6));
  EXPECT_TRUE(b.forced_unique);
  EXPECT_TRUE(b.mean_exceeds_half_past_50);
  // A larger (5,2) maximum would break the chain.
  EXPECT_FALSE(six_two_bounds(53).forced_unique);
}

TEST(SixTwo, TransportIsSound) {
  std::mt19937_64 rng(63);
  const auto f = BooleanFunction::parity(5);
  InfeasibilityCertificate lambda{5, 4, std::vector<mpq_class>(32, 1)};
  const auto g = -BooleanFunction::parity(5);
  EXPECT_TRUE(verify_farkas(g, 4, lambda));
  for (int rep = 0; rep < 10; ++rep) {
    const auto t = random_signed_permutation(5, rng);
    EXPECT_TRUE(verify_farkas(apply(t, f), 4, transport(t, lambda)));
  }
  const auto e = extend_fixing_last(random_signed_permutation(5, rng));
  EXPECT_EQ(e.num_vars(), 6);
  EXPECT_EQ(e.sigma().back(), 5);
  EXPECT_EQ(e.alpha().back(), Sign::Positive);
  // A real non-uniform certificate: a 4-variable non-threshold function at degree 1.
  for (std::uint64_t t = 0; t < (1U << 16); ++t) {
    const auto h = BooleanFunction::from_words(4, {t});
    const auto r = ptf_feasibility(h, 1);
    if (is_feasible(r)) continue;
    const auto& mu = std::get<InfeasibilityCertificate>(r);
    for (int rep = 0; rep < 5; ++rep) {
      const auto s = random_signed_permutation(4, rng);
      ASSERT_TRUE(verify_farkas(apply(s, h), 1, transport(s, mu)));
    }
    if (t > 2000) break;
  }
}

TEST(SixTwo, FullRun) {
  const auto r = search_6_2();
  EXPECT_EQ(r.outcome.verdict, Verdict::NoHsfFound);
  EXPECT_EQ(r.orbit_size, 640U);
  EXPECT_EQ(r.pairs, 640U * 640U);
  EXPECT_EQ(r.pairs_at_122, 51840U);
  EXPECT_EQ(r.reduced, 81U);
  EXPECT_EQ(r.lp_infeasible, 81U);
  EXPECT_EQ(r.certificates_verified, 51840U);
  ASSERT_EQ(r.reduced_certificates.size(), 81U);
  for (const auto& [f, lambda] : r.reduced_certificates) {
    EXPECT_EQ(dichromatic_count(f), 122U);
    EXPECT_EQ(restrict(f, 5, Sign::Negative), build_hsf_5_2());
    EXPECT_TRUE(verify_farkas(f, 2, lambda));
  }
  ASSERT_EQ(r.outcome.stages.size(), 4U);
  EXPECT_EQ(r.outcome.stages[0].stage, "condition-star-pairs");
  EXPECT_EQ(r.outcome.stages.back().stage, "certificate-transport");
  EXPECT_THROW(search_6_2(BooleanFunction::parity(4)), std::invalid_argument);
}
