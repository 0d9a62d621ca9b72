#include "iecount/generator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace iecount {

mpz_class candidate_clause_count(Var n, unsigned k) {
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), n, k);
  mpz_class count = binom;
  mpz_mul_2exp(count.get_mpz_t(), binom.get_mpz_t(), k);
  return count;
}

Clause random_clause(Var n, unsigned k, Rng &rng) {
  if (k < 1 || k > n)
    throw std::invalid_argument("clause width k=" + std::to_string(k) +
                                " must lie in [1, n=" + std::to_string(n) + "]");
  // Floyd's sampling: k distinct variables from 1..n, uniform over k-subsets.
  std::vector<Var> vars;
  vars.reserve(k);
  for (Var j = n - k + 1; j <= n; ++j) {
    const Var t = static_cast<Var>(rng.below(j)) + 1;
    vars.push_back(std::find(vars.begin(), vars.end(), t) == vars.end() ? t : j);
  }
  std::sort(vars.begin(), vars.end());
  std::vector<Literal> lits;
  lits.reserve(k);
  for (Var v : vars)
    lits.push_back(Literal{v, rng.coin() ? Sign::positive : Sign::negative});
  return Clause(std::move(lits));
}

Formula random_formula(const GeneratorConfig &cfg) {
  if (cfg.n < 1)
    throw std::invalid_argument("n must be at least 1");
  if (cfg.k < 1 || cfg.k > cfg.n)
    throw std::invalid_argument("clause width k=" + std::to_string(cfg.k) +
                                " must lie in [1, n=" + std::to_string(cfg.n) + "]");
  const mpz_class available = candidate_clause_count(cfg.n, cfg.k);
  if (mpz_class(std::to_string(cfg.m)) > available)
    throw std::invalid_argument("requested m=" + std::to_string(cfg.m) +
                                " distinct clauses but only " + available.get_str() +
                                " exist for n=" + std::to_string(cfg.n) +
                                ", k=" + std::to_string(cfg.k));
  Rng rng(cfg.seed);
  std::set<Clause> seen;
  std::vector<Clause> clauses;
  clauses.reserve(cfg.m);
  while (clauses.size() < cfg.m) {
    Clause c = random_clause(cfg.n, cfg.k, rng);
    if (seen.insert(c).second)
      clauses.push_back(std::move(c));
  }
  return Formula(cfg.n, std::move(clauses));
}

} // namespace iecount
