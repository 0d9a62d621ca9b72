#pragma once

// Reference counters used to validate the engines. Deliberately simple and
// independent of SignState and the branch-tree traversal.

#include <cstddef>
#include <stdexcept>

#include <gmpxx.h>

#include "iecount/cnf.hpp"

namespace iecount {

constexpr Var kBruteForceMaxVars = 30;
constexpr std::size_t kSignedSumMaxClauses = 22;

class OracleCeilingError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Counts satisfying assignments by trying all 2^n of them.
mpz_class brute_force_count(const Formula &f);

// Evaluates sum_{v=0..n} (E_v - O_v) * 2^(n-v) by walking all 2^m clause
// subsets and testing each one for monotonicity directly.
mpz_class brute_force_signed_sum(const Formula &f);

} // namespace iecount
