#include <gtest/gtest.h>

#include "iecount/oracle.hpp"
#include "support.hpp"

using namespace iecount;
using iecount::testing::formula_of;

TEST(BruteForce, SmallHandCountedFormulas) {
  EXPECT_EQ(brute_force_count(Formula(3, {})), 8);
  EXPECT_EQ(brute_force_count(formula_of(3, {{1}})), 4);
  EXPECT_EQ(brute_force_count(formula_of(3, {{1, 2}})), 6);
  EXPECT_EQ(brute_force_count(formula_of(3, {{1, 2, 3}, {-1}, {-2}, {-3}})), 0);
  // (x1 v x2) & (-x1 v x3): 8 - 2 - 2 = 4.
  EXPECT_EQ(brute_force_count(formula_of(3, {{1, 2}, {-1, 3}})), 4);
}

TEST(BruteForce, RefusesLargeN) {
  EXPECT_THROW(brute_force_count(Formula(kBruteForceMaxVars + 1, {})), OracleCeilingError);
}

TEST(SignedSum, MatchesBruteForceOnHandFormulas) {
  EXPECT_EQ(brute_force_signed_sum(Formula(3, {})), 8);
  EXPECT_EQ(brute_force_signed_sum(formula_of(2, {{1, 2}, {1}, {2}})), 1);
  EXPECT_EQ(brute_force_signed_sum(formula_of(3, {{1, 2}, {-1, 3}})), 4);
}

TEST(SignedSum, RefusesLargeM) {
  std::vector<Clause> cs;
  for (int v = 1; v <= static_cast<int>(kSignedSumMaxClauses) + 1; ++v)
    cs.push_back(Clause::of({v}));
  EXPECT_THROW(brute_force_signed_sum(Formula(static_cast<Var>(cs.size()), cs)), OracleCeilingError);
}
