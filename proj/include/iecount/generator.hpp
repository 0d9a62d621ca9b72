#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "iecount/cnf.hpp"
#include "iecount/rng.hpp"

namespace iecount {

struct GeneratorConfig {
  Var n = 0;
  std::uint64_t m = 0;
  unsigned k = 0;
  std::uint64_t seed = 0;
};

// Number of distinct exactly-k clauses over n variables: 2^k * C(n, k).
mpz_class candidate_clause_count(Var n, unsigned k);

// Uniform over all 2^k * C(n, k) exactly-k clauses.
Clause random_clause(Var n, unsigned k, Rng &rng);

// m pairwise distinct uniform clauses in generation order. A draw that repeats
// an earlier clause is discarded and redrawn.
Formula random_formula(const GeneratorConfig &cfg);

} // namespace iecount
