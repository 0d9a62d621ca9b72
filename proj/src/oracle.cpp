#include "iecount/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace iecount {

mpz_class brute_force_count(const Formula &f) {
  const Var n = f.num_vars();
  if (n > kBruteForceMaxVars)
    throw OracleCeilingError("brute-force counting is limited to n <= " +
                             std::to_string(kBruteForceMaxVars) + " (got n = " +
                             std::to_string(n) + ")");
  // A clause is falsified by bits iff every positive literal is 0 and every
  // negative literal is 1.
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.num_clauses());
  for (const Clause &c : f.clauses()) {
    Masks mk;
    for (const Literal &l : c) {
      const std::uint32_t bit = std::uint32_t{1} << (l.var - 1);
      (l.sign == Sign::positive ? mk.pos : mk.neg) |= bit;
    }
    masks.push_back(mk);
  }
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto bits = static_cast<std::uint32_t>(a);
    bool sat = true;
    for (const Masks &mk : masks) {
      if (((bits & mk.pos) | (~bits & mk.neg)) == 0) {
        sat = false;
        break;
      }
    }
    count += sat ? 1 : 0;
  }
  mpz_class result;
  mpz_import(result.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
  return result;
}

mpz_class brute_force_signed_sum(const Formula &f) {
  const std::size_t m = f.num_clauses();
  if (m > kSignedSumMaxClauses)
    throw OracleCeilingError("signed-sum enumeration is limited to m <= " +
                             std::to_string(kSignedSumMaxClauses) + " (got m = " +
                             std::to_string(m) + ")");
  const Var n = f.num_vars();
  const std::size_t words = (static_cast<std::size_t>(n) + 64) / 64;

  // Variable sets of each clause, split by sign, as bitsets over 1..n.
  std::vector<std::vector<std::uint64_t>> pos(m, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<std::uint64_t>> neg(m, std::vector<std::uint64_t>(words, 0));
  for (std::size_t j = 0; j < m; ++j)
    for (const Literal &l : f[j])
      (l.sign == Sign::positive ? pos : neg)[j][l.var / 64] |= std::uint64_t{1} << (l.var % 64);

  std::vector<std::int64_t> even_minus_odd(n + 1, 0);
  std::vector<std::uint64_t> p(words);
  std::vector<std::uint64_t> q(words);
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    std::fill(p.begin(), p.end(), 0);
    std::fill(q.begin(), q.end(), 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (((s >> j) & 1U) == 0)
        continue;
      for (std::size_t w = 0; w < words; ++w) {
        p[w] |= pos[j][w];
        q[w] |= neg[j][w];
      }
    }
    bool monotone = true;
    std::size_t vars = 0;
    for (std::size_t w = 0; w < words; ++w) {
      if ((p[w] & q[w]) != 0) {
        monotone = false;
        break;
      }
      vars += static_cast<std::size_t>(std::popcount(p[w] | q[w]));
    }
    if (!monotone)
      continue;
    even_minus_odd[vars] += (std::popcount(s) % 2 == 0) ? 1 : -1;
  }

  mpz_class sum = 0;
  for (Var v = 0; v <= n; ++v) {
    mpz_class weight;
    mpz_ui_pow_ui(weight.get_mpz_t(), 2, n - v);
    sum += mpz_class(static_cast<long>(even_minus_odd[v])) * weight;
  }
  return sum;
}

} // namespace iecount
