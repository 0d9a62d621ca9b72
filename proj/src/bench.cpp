#include "iecount/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>

#include "iecount/counter.hpp"
#include "iecount/generator.hpp"
#include "iecount/oracle.hpp"

namespace iecount {

namespace {

enum : std::uint64_t { kFruitlessStream = 1, kPruneStream = 2 };

Estimate make_estimate(std::uint64_t hits, std::uint64_t trials) {
  Estimate e;
  e.trials = trials;
  e.rate = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(trials));
  return e;
}

// Sign state over variables 1..nu: signs[v] for v <= nu.
std::vector<Sign> random_signs(Var nu, Rng &rng) {
  std::vector<Sign> signs(nu + 1, Sign::positive);
  for (Var v = 1; v <= nu; ++v)
    signs[v] = rng.coin() ? Sign::positive : Sign::negative;
  return signs;
}

bool fruitless_for(const std::vector<Sign> &signs, const Clause &c) {
  const Var nu = static_cast<Var>(signs.size() - 1);
  for (const Literal &l : c)
    if (l.var > nu || signs[l.var] != l.sign)
      return false;
  return true;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

template <class T> std::string format_opt(const std::optional<T> &x) {
  if (!x)
    return "";
  if constexpr (std::is_same_v<T, bool>)
    return *x ? "true" : "false";
  else if constexpr (std::is_floating_point_v<T>)
    return format_real(*x);
  else
    return std::to_string(*x);
}

template <class T> nlohmann::json json_opt(const std::optional<T> &x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

BenchRow run_cell(Var n, unsigned k, std::uint64_t m, unsigned sigma, std::uint64_t seed,
                  const SweepConfig &cfg) {
  BenchRow row;
  row.n = n;
  row.m = m;
  row.k = k;
  row.delta = static_cast<double>(m) / n;
  row.sigma = sigma;
  row.seed = seed;

  const Var nu = critical_nu(n, k);
  const double saturation = static_cast<double>(nu) / n;
  row.predicted_fruitless = fruitless_probability_exact(n, k, nu).get_d();
  row.approx_fruitless = fruitless_probability_approx(k, saturation);
  row.predicted_prune_lower_bound = prune_rate_lower_bound(n, sigma);
  row.predicted_inner_exponent = inner_exponent(k, sigma);

  const Rng base(seed);
  if (cfg.trials > 0) {
    Rng fr = base.derive(kFruitlessStream);
    row.measured_fruitless = estimate_fruitless_rate(n, k, nu, cfg.trials, fr).rate;
    if (nu >= k) {
      Rng pr = base.derive(kPruneStream);
      row.measured_prune_rate = estimate_prune_rate(n, k, sigma, cfg.trials, pr).rate;
    }
  }

  if (mpz_class(std::to_string(m)) > candidate_clause_count(n, k))
    return row;
  const Formula f = random_formula(GeneratorConfig{n, m, k, seed});

  std::optional<mpz_class> truth;
  if (n <= cfg.oracle_max_vars)
    truth = brute_force_count(f);

  CountOptions opts;
  opts.node_limit = cfg.node_limit;
  if (m <= cfg.exhaustive_max_clauses) {
    try {
      row.nodes_exhaustive = signed_count_exhaustive(f, opts).nodes_visited;
    } catch (const NodeLimitExceeded &) {
    }
  }
  try {
    const CountResult pruned = signed_count_pruned(f, opts);
    row.nodes_pruned = pruned.nodes_visited;
    if (truth)
      row.count_agrees = pruned.model_count == *truth;
  } catch (const NodeLimitExceeded &) {
  }
  try {
    const CountResult a1 = count_random_a1(f, sigma, opts);
    row.nodes_a1 = a1.nodes_visited;
    if (truth)
      row.a1_agrees = a1.model_count == *truth;
  } catch (const NodeLimitExceeded &) {
  } catch (const IdentityRangeError &) {
    // The cutoff dropped a subtree that did not cancel; the node count of that
    // run is lost with the exception.
    if (truth)
      row.a1_agrees = false;
  }
  return row;
}

template <class T> std::vector<T> read_list(const nlohmann::json &j, const char *key) {
  if (!j.contains(key))
    return {};
  const auto &v = j.at(key);
  if (v.is_array())
    return v.get<std::vector<T>>();
  return {v.get<T>()};
}

} // namespace

Estimate estimate_fruitless_rate(Var n, unsigned k, Var nu, std::uint64_t trials, Rng &rng) {
  if (trials == 0)
    throw std::invalid_argument("estimate needs at least one trial");
  if (nu > n)
    throw std::invalid_argument("nu must not exceed n");
  const std::vector<Sign> signs = random_signs(nu, rng);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t)
    hits += fruitless_for(signs, random_clause(n, k, rng)) ? 1 : 0;
  return make_estimate(hits, trials);
}

Estimate estimate_prune_rate(Var n, unsigned k, unsigned sigma, std::uint64_t trials, Rng &rng) {
  if (trials == 0)
    throw std::invalid_argument("estimate needs at least one trial");
  if (sigma < 1)
    throw std::invalid_argument("sigma must be at least 1");
  const Var nu = critical_nu(n, k);
  if (nu < k)
    throw std::invalid_argument("critical state has fewer than k variables");
  const std::uint64_t draws = static_cast<std::uint64_t>(sigma) * n;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::vector<Sign> signs = random_signs(nu, rng);
    for (std::uint64_t d = 0; d < draws; ++d) {
      if (fruitless_for(signs, random_clause(n, k, rng))) {
        ++hits;
        break;
      }
    }
  }
  return make_estimate(hits, trials);
}

Var critical_nu(Var n, unsigned k) {
  return static_cast<Var>(std::ceil(critical_saturation(n, k) * n));
}

double prune_rate_lower_bound(Var n, unsigned sigma) {
  const double bound = 1.0 - std::pow(static_cast<double>(n), -static_cast<double>(sigma) * std::log2(std::exp(1.0)));
  return std::clamp(bound, 0.0, 1.0);
}

double expected_prune_rate(Var n, unsigned k, unsigned sigma) {
  const mpq_class p = fruitless_probability_exact(n, k, critical_nu(n, k));
  const mpq_class miss = 1 - p;
  mpz_class num;
  mpz_class den;
  const unsigned long draws = static_cast<unsigned long>(sigma) * n;
  mpz_pow_ui(num.get_mpz_t(), miss.get_num_mpz_t(), draws);
  mpz_pow_ui(den.get_mpz_t(), miss.get_den_mpz_t(), draws);
  mpq_class all_miss(num, den);
  all_miss.canonicalize();
  return mpq_class(1 - all_miss).get_d();
}

double fruitless_probability_approx(unsigned k, double saturation) {
  if (saturation <= 0.0)
    return 0.0;
  return std::exp2(-static_cast<double>(k) * (1.0 - std::log2(saturation)));
}

double inner_exponent(unsigned k, unsigned sigma) {
  const double kk = k;
  const double s = sigma;
  return std::log2(s * kk) / kk + 1.0 / kk - 1.0 / (s * kk * kk);
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
  SweepConfig cfg;
  cfg.n = read_list<Var>(j, "n");
  cfg.k = read_list<unsigned>(j, "k");
  cfg.delta = read_list<double>(j, "delta");
  cfg.m = read_list<std::uint64_t>(j, "m");
  cfg.sigma = read_list<unsigned>(j, "sigma");
  if (j.contains("seeds") && j.at("seeds").is_number_integer()) {
    // A bare count means seeds 1..count.
    const auto count = j.at("seeds").get<std::uint64_t>();
    for (std::uint64_t s = 1; s <= count; ++s)
      cfg.seeds.push_back(s);
  } else {
    cfg.seeds = read_list<std::uint64_t>(j, "seeds");
  }
  cfg.trials = j.value("trials", cfg.trials);
  cfg.exhaustive_max_clauses = j.value("exhaustiveMaxClauses", cfg.exhaustive_max_clauses);
  cfg.oracle_max_vars = j.value("oracleMaxVars", cfg.oracle_max_vars);
  cfg.node_limit = j.value("nodeLimit", cfg.node_limit);
  cfg.threads = j.value("threads", cfg.threads);
  if (cfg.delta.empty() == cfg.m.empty())
    throw std::invalid_argument("sweep config: give exactly one of 'delta' or 'm'");
  if (cfg.n.empty() || cfg.k.empty() || cfg.sigma.empty() || cfg.seeds.empty())
    throw std::invalid_argument("sweep config: 'n', 'k', 'sigma' and 'seeds' must be non-empty");
  for (double d : cfg.delta)
    if (!(d >= 0.0))
      throw std::invalid_argument("sweep config: delta must be non-negative");
  for (Var n : cfg.n)
    if (n < 2)
      throw std::invalid_argument("sweep config: every n must be at least 2");
  for (unsigned k : cfg.k)
    for (Var n : cfg.n)
      if (k < 1 || k > n)
        throw std::invalid_argument("sweep config: need 1 <= k <= n");
  for (unsigned s : cfg.sigma)
    if (s < 1)
      throw std::invalid_argument("sweep config: sigma must be at least 1");
  return cfg;
}

std::vector<BenchRow> run_sweep(const SweepConfig &cfg) {
  struct Cell {
    Var n;
    unsigned k;
    std::uint64_t m;
    unsigned sigma;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  const bool by_delta = cfg.m.empty();
  const std::size_t density_count = by_delta ? cfg.delta.size() : cfg.m.size();
  for (Var n : cfg.n)
    for (unsigned k : cfg.k)
      for (std::size_t d = 0; d < density_count; ++d) {
        const std::uint64_t m =
            by_delta ? static_cast<std::uint64_t>(std::llround(cfg.delta[d] * n)) : cfg.m[d];
        for (unsigned sigma : cfg.sigma)
          for (std::uint64_t seed : cfg.seeds)
            cells.push_back(Cell{n, k, m, sigma, seed});
      }

  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      const Cell &c = cells[i];
      rows[i] = run_cell(c.n, c.k, c.m, c.sigma, c.seed, cfg);
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(work);
  }
  return rows;
}

void write_csv(std::ostream &out, std::span<const BenchRow> rows) {
  out << "n,m,k,delta,sigma,seed,nodesExhaustive,nodesPruned,nodesA1,countAgrees,a1Agrees,"
         "predictedFruitless,measuredFruitless,approxFruitless,predictedPruneLowerBound,"
         "measuredPruneRate,predictedInnerExponent\n";
  for (const BenchRow &r : rows) {
    out << r.n << ',' << r.m << ',' << r.k << ',' << format_real(r.delta) << ',' << r.sigma << ','
        << r.seed << ',' << format_opt(r.nodes_exhaustive) << ',' << format_opt(r.nodes_pruned) << ','
        << format_opt(r.nodes_a1) << ',' << format_opt(r.count_agrees) << ','
        << format_opt(r.a1_agrees) << ',' << format_real(r.predicted_fruitless) << ','
        << format_opt(r.measured_fruitless) << ',' << format_real(r.approx_fruitless) << ','
        << format_real(r.predicted_prune_lower_bound) << ',' << format_opt(r.measured_prune_rate)
        << ',' << format_real(r.predicted_inner_exponent) << '\n';
  }
}

nlohmann::json to_json(std::span<const BenchRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const BenchRow &r : rows) {
    out.push_back({{"n", r.n},
                   {"m", r.m},
                   {"k", r.k},
                   {"delta", r.delta},
                   {"sigma", r.sigma},
                   {"seed", r.seed},
                   {"nodesExhaustive", json_opt(r.nodes_exhaustive)},
                   {"nodesPruned", json_opt(r.nodes_pruned)},
                   {"nodesA1", json_opt(r.nodes_a1)},
                   {"countAgrees", json_opt(r.count_agrees)},
                   {"a1Agrees", json_opt(r.a1_agrees)},
                   {"predictedFruitless", r.predicted_fruitless},
                   {"measuredFruitless", json_opt(r.measured_fruitless)},
                   {"approxFruitless", r.approx_fruitless},
                   {"predictedPruneLowerBound", r.predicted_prune_lower_bound},
                   {"measuredPruneRate", json_opt(r.measured_prune_rate)},
                   {"predictedInnerExponent", r.predicted_inner_exponent}});
  }
  return out;
}

} // namespace iecount
