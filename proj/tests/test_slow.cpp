#include <gtest/gtest.h>

#include "ptf/hsf_search.hpp"
#include "ptf/report.hpp"

using namespace ptf;

namespace {

std::vector<std::uint64_t> survivors(const SearchOutcome& o) {
  std::vector<std::uint64_t> v;
  for (const auto& s : o.stages) v.push_back(s.survivors_out);
  return v;
}

}  // namespace

TEST(ExhaustiveFive, DegreeThreeHasNone) {
  const auto o = bounded_search(5, 3);
  EXPECT_EQ(o.verdict, Verdict::NoHsfFound);
  EXPECT_EQ(o.stages[0].candidates_in, std::uint64_t{1} << 32);
  EXPECT_EQ(survivors(o), (std::vector<std::uint64_t>{226, 3, 0, 0}));
}

TEST(ExhaustiveFive, QuadraticWithoutFilters) {
  // Dropping the filter stage only moves work to the LP.
  SearchOptions opt;
  opt.necessary_filters = false;
  const auto o = search_5_2(opt);
  EXPECT_TRUE(matches_uniqueness_claim(o));
  EXPECT_EQ(survivors(o), (std::vector<std::uint64_t>{45807916, 8227, 8227, 1}));
  ASSERT_EQ(o.representatives.size(), 1U);
  const auto& rep = o.representatives[0];
  // Self-certifying: recount and re-verify without the search.
  EXPECT_EQ(dichromatic_count(rep.function), rep.dichromatic);
  EXPECT_GT(rep.dichromatic, gl_extremal_count(5, 2));
  EXPECT_TRUE(verify_primal(rep.function, 2, rep.certificate));
  EXPECT_EQ(to_hex(rep.function), "066b6bb0");
}
