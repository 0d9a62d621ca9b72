#pragma once

// Random inflation: each clause c is replaced by the 2^z clauses obtained by
// appending z variables from outside c under every sign combination. Resolving
// the 2^z clauses on the added variables gives back c, so the inflated formula
// has exactly the models of the original while its clauses are wider and look
// random. The split counter is then run on the inflated formula, whose last
// clauses are one designated "tail" clause per inflated original.

#include <cstddef>
#include <string>
#include <vector>

#include "iecount/cnf.hpp"
#include "iecount/counter.hpp"
#include "iecount/rng.hpp"
#include "json.hpp"

namespace iecount {

// z = max(1, ceil(log2 log2 n)), computed exactly: the least z >= 1 with
// n <= 2^(2^z). Requires n >= 4.
unsigned inflation_width(Var num_vars);

// Number of distinct clauses inflate_clause can produce from c: 2^z * C(n - |c|, z).
mpz_class inflation_capacity(const Clause &c, unsigned z, Var num_vars);

// Whether inflate_formula(f, sigma) can give each of its entries a distinct
// tail clause. Exact: solves the assignment over all candidate inflations of
// clauses whose capacity is below the entry count. Requires n >= 4.
bool has_distinct_tails(const Formula &f, unsigned sigma);

struct InflationEntry {
  Clause original;
  // z distinct variables not mentioned by original, ascending.
  std::vector<Var> chosen;
  // 2^z clauses; bit i of the position gives the sign of chosen[i]
  // (0 positive, 1 negative).
  std::vector<Clause> inflated;
  Clause tail;
};

struct InflationRecord {
  unsigned z = 0;
  unsigned sigma = 1;
  std::size_t passes = 0;
  // passes * m entries, pass-major: entry p*m + i inflates clause i in pass p.
  std::vector<InflationEntry> entries;
};

struct Inflation {
  Formula formula;
  InflationRecord record;
};

// The 2^z inflations of c over z variables drawn uniformly from outside c.
std::vector<Clause> inflate_clause(const Clause &c, unsigned z, Var num_vars, Rng &rng);

// One pass when m >= sigma*n, otherwise ceil(sigma*n / m) passes with fresh
// draws. Output: every non-tail inflated clause (pass-major, skipping clauses
// already emitted or used as a tail), followed by the tail clauses in entry
// order. An entry whose clauses collide with earlier output is redrawn; if no
// collision-free draw turns up, the first draw admitting pairwise distinct
// tails is accepted (earlier tails may move within their own entry) and its
// repeated clauses are emitted once. Throws std::invalid_argument when
// has_distinct_tails(f, sigma) is false.
Inflation inflate_formula(const Formula &f, unsigned sigma, Rng &rng);

// Rebuilds the clause sequence a record describes.
std::vector<Clause> assemble_inflation(const InflationRecord &rec);

struct InflationCheck {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

// Checks that every entry is a complete sign cover of its original clause
// over z fresh-to-the-clause variables (so resolution recovers the original),
// that entries line up with f's clauses pass by pass, and that fprime is
// exactly the sequence the record describes.
InflationCheck verify_inflation(const Formula &f, const Formula &fprime, const InflationRecord &rec);

// Inflate, then run the split counter on the result.
CountResult count_a2(const Formula &f, unsigned sigma, Rng &rng, const CountOptions &opts = {});

nlohmann::json to_json(const InflationRecord &rec);
InflationRecord record_from_json(const nlohmann::json &j);

} // namespace iecount
