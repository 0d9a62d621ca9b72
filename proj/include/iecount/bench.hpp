#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "iecount/cnf.hpp"
#include "iecount/rng.hpp"
#include "json.hpp"

namespace iecount {

// Monte Carlo rate with its normal-approximation standard error.
struct Estimate {
  double rate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Fraction of uniform exactly-k clauses that are fruitless for a fixed sign
// state over nu variables. Throws on trials == 0.
Estimate estimate_fruitless_rate(Var n, unsigned k, Var nu, std::uint64_t trials, Rng &rng);

// Fraction of trials in which, for a fresh sign state over critical_nu(n, k)
// variables, at least one of sigma*n uniform clauses is fruitless.
Estimate estimate_prune_rate(Var n, unsigned k, unsigned sigma, std::uint64_t trials, Rng &rng);

// ceil(critical_saturation(n, k) * n).
Var critical_nu(Var n, unsigned k);

// 1 - n^(-sigma * log2 e), clamped to [0, 1].
double prune_rate_lower_bound(Var n, unsigned sigma);

// 1 - (1 - p)^(sigma*n) with p = fruitless_probability_exact(n, k, critical_nu(n, k)).
double expected_prune_rate(Var n, unsigned k, unsigned sigma);

// 2^(-k (1 - log2 s)), the asymptotic form of the fruitless probability.
double fruitless_probability_approx(unsigned k, double saturation);

// log2(sigma k)/k + 1/k - 1/(sigma k^2).
double inner_exponent(unsigned k, unsigned sigma);

struct BenchRow {
  Var n = 0;
  std::uint64_t m = 0;
  unsigned k = 0;
  double delta = 0.0;
  unsigned sigma = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> nodes_exhaustive;
  std::optional<std::uint64_t> nodes_pruned;
  std::optional<std::uint64_t> nodes_a1;
  // Pruned-engine count equals the brute-force count.
  std::optional<bool> count_agrees;
  std::optional<bool> a1_agrees;
  double predicted_fruitless = 0.0;
  std::optional<double> measured_fruitless;
  double approx_fruitless = 0.0;
  double predicted_prune_lower_bound = 0.0;
  std::optional<double> measured_prune_rate;
  double predicted_inner_exponent = 0.0;
};

struct SweepConfig {
  std::vector<Var> n;
  std::vector<unsigned> k;
  // Exactly one of delta / m is used; m = round(delta * n) for delta.
  std::vector<double> delta;
  std::vector<std::uint64_t> m;
  std::vector<unsigned> sigma;
  std::vector<std::uint64_t> seeds;
  std::uint64_t trials = 10000;
  std::size_t exhaustive_max_clauses = 25;
  Var oracle_max_vars = 20;
  std::uint64_t node_limit = 20'000'000;
  unsigned threads = 1;
};

SweepConfig sweep_config_from_json(const nlohmann::json &j);

// One row per (n, k, delta|m, sigma, seed) cell, in that nesting order.
std::vector<BenchRow> run_sweep(const SweepConfig &cfg);

void write_csv(std::ostream &out, std::span<const BenchRow> rows);
nlohmann::json to_json(std::span<const BenchRow> rows);

} // namespace iecount
