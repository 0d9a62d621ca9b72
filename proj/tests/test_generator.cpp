#include <gtest/gtest.h>

#include <map>
#include <set>

#include "iecount/generator.hpp"
#include "iecount/rng.hpp"

using namespace iecount;

TEST(Rng, BelowStaysInRangeAndIsSeedDeterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.below(7));
  }
  EXPECT_THROW(a.below(0), std::invalid_argument);
}

TEST(Rng, UnitIsHalfOpen) {
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, DerivedStreamsDifferFromParentAndEachOther) {
  const Rng base(9);
  Rng p = base, d1 = base.derive(1), d2 = base.derive(2);
  EXPECT_NE(p.next(), d1.next());
  EXPECT_NE(base.derive(1).next(), d2.next());
  EXPECT_EQ(base.derive(1).next(), base.derive(1).next());
}

TEST(Generator, CandidateCountIsTwoToTheKTimesBinomial) {
  EXPECT_EQ(candidate_clause_count(5, 2), 40);
  EXPECT_EQ(candidate_clause_count(3, 3), 8);
  EXPECT_EQ(candidate_clause_count(100, 3), mpz_class(8 * 161700));
}

TEST(Generator, ClausesHaveExactWidthAndDistinctVariables) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Clause c = random_clause(9, 4, rng);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_LE(c.max_var(), 9u);
  }
  EXPECT_THROW(random_clause(3, 4, rng), std::invalid_argument);
  EXPECT_THROW(random_clause(3, 0, rng), std::invalid_argument);
}

TEST(Generator, FormulaIsDistinctAndReproducible) {
  const GeneratorConfig cfg{10, 60, 3, 17};
  const Formula f = random_formula(cfg);
  EXPECT_EQ(f.num_clauses(), 60u);
  std::set<Clause> distinct(f.clauses().begin(), f.clauses().end());
  EXPECT_EQ(distinct.size(), 60u);
  EXPECT_EQ(random_formula(cfg), f);
  EXPECT_NE(random_formula(GeneratorConfig{10, 60, 3, 18}), f);
}

TEST(Generator, SaturatedRequestReturnsEveryCandidate) {
  const Formula f = random_formula(GeneratorConfig{3, 8, 3, 1});
  EXPECT_EQ(f.num_clauses(), 8u);
  EXPECT_THROW(random_formula(GeneratorConfig{3, 9, 3, 1}), std::invalid_argument);
  EXPECT_THROW(random_formula(GeneratorConfig{0, 0, 1, 1}), std::invalid_argument);
}

// Pearson chi-square over all 40 clauses for n=5, k=2; 39 degrees of freedom,
// critical value 72.055 at significance 0.001.
TEST(Generator, ClauseDistributionIsUniform) {
  Rng rng(2024);
  std::map<Clause, long> hist;
  const long draws = 40000;
  for (long i = 0; i < draws; ++i)
    ++hist[random_clause(5, 2, rng)];
  ASSERT_EQ(hist.size(), 40u);
  const double expected = static_cast<double>(draws) / 40.0;
  double chi2 = 0.0;
  for (const auto &[clause, count] : hist)
    chi2 += (count - expected) * (count - expected) / expected;
  EXPECT_LT(chi2, 72.055);
}
