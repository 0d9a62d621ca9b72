#include "iecount/counter.hpp"

#include <cmath>
#include <string>

#include "enumerator.hpp"

namespace iecount {

std::optional<Sign> SignState::sign_of(Var v) const {
  if (signs_[v] == 0)
    return std::nullopt;
  return static_cast<Sign>(signs_[v]);
}

void SignState::add(const Clause &c) {
  if (!is_compatible(*this, c))
    throw std::logic_error("clause clashes with the sign state");
  for (const Literal &l : c) {
    if (signs_[l.var] == 0) {
      signs_[l.var] = static_cast<std::int8_t>(l.sign);
      ++nu_;
    }
  }
}

SignState SignState::of(const Formula &f, std::span<const std::size_t> clause_indices) {
  SignState s(f.num_vars());
  std::size_t level = 0;
  for (std::size_t j : clause_indices) {
    s.add(f[j]);
    level = std::max(level, j + 1);
  }
  s.level_ = level;
  return s;
}

bool is_compatible(const SignState &state, const Clause &c) {
  for (const Literal &l : c) {
    const auto s = state.sign_of(l.var);
    if (s && *s != l.sign)
      return false;
  }
  return true;
}

bool is_fruitless(const SignState &state, const Clause &c) {
  for (const Literal &l : c) {
    const auto s = state.sign_of(l.var);
    if (!s || *s != l.sign)
      return false;
  }
  return true;
}

bool exists_fruitless_ahead(const SignState &state, const Formula &f, std::size_t from) {
  for (std::size_t j = from; j < f.num_clauses(); ++j)
    if (is_fruitless(state, f[j]))
      return true;
  return false;
}

void ParityTally::merge(const ParityTally &other) {
  if (odd.size() != other.odd.size())
    throw std::invalid_argument("cannot merge tallies over different variable counts");
  for (std::size_t v = 0; v < odd.size(); ++v) {
    odd[v] += other.odd[v];
    even[v] += other.even[v];
  }
}

IdentityRangeError::IdentityRangeError(const mpz_class &value, Var num_vars)
    : std::logic_error("inclusion-exclusion sum " + value.get_str() + " lies outside [0, 2^" +
                       std::to_string(num_vars) + "]"),
      value_(value) {}

mpz_class apply_identity_unchecked(const ParityTally &tally, Var num_vars) {
  if (tally.odd.size() != static_cast<std::size_t>(num_vars) + 1 ||
      tally.even.size() != tally.odd.size())
    throw std::invalid_argument("tally does not cover variable counts 0.." +
                                std::to_string(num_vars));
  mpz_class unsat = 0;
  mpz_class term;
  for (Var v = 1; v <= num_vars; ++v) {
    mpz_class diff = tally.odd[v] - tally.even[v];
    mpz_mul_2exp(term.get_mpz_t(), diff.get_mpz_t(), num_vars - v);
    unsat += term;
  }
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2, num_vars);
  return total - unsat;
}

mpz_class apply_identity(const ParityTally &tally, Var num_vars) {
  mpz_class count = apply_identity_unchecked(tally, num_vars);
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2, num_vars);
  if (count < 0 || count > total)
    throw IdentityRangeError(count, num_vars);
  return count;
}

std::string_view to_string(CountMode mode) {
  switch (mode) {
  case CountMode::exhaustive:
    return "exhaustive";
  case CountMode::pruned:
    return "pruned";
  case CountMode::a1:
    return "a1";
  case CountMode::a2:
    return "a2";
  }
  return "unknown";
}

nlohmann::json to_json(const CountResult &r) {
  return nlohmann::json{
      {"modelCount", r.model_count.get_str()},
      {"mode", std::string(to_string(r.mode))},
      {"exact", r.exact},
      {"nodesVisited", r.nodes_visited},
      {"subtreesPruned", r.subtrees_pruned},
      {"saturationCutoffs", r.saturation_cutoffs},
  };
}

namespace {

CountResult finish(const Formula &f, const detail::TraversalTotals &totals, CountMode mode) {
  CountResult r;
  r.mode = mode;
  r.exact = mode == CountMode::exhaustive || mode == CountMode::pruned;
  r.nodes_visited = totals.nodes;
  r.subtrees_pruned = totals.pruned;
  r.saturation_cutoffs = totals.cutoffs;
  r.tally = detail::to_tally(totals);
  r.model_count = apply_identity(r.tally, f.num_vars());
  return r;
}

detail::TraversalConfig full_lattice(const Formula &f, bool prune) {
  detail::TraversalConfig cfg;
  cfg.prune = prune;
  cfg.head_size = 0;
  cfg.head_nu_limit = f.num_vars() + 1;
  return cfg;
}

} // namespace

CountResult signed_count_exhaustive(const Formula &f, const CountOptions &opts) {
  return finish(f, detail::traverse(f, full_lattice(f, false), opts), CountMode::exhaustive);
}

CountResult signed_count_pruned(const Formula &f, const CountOptions &opts) {
  return finish(f, detail::traverse(f, full_lattice(f, true), opts), CountMode::pruned);
}

double critical_saturation(Var num_vars, unsigned k) {
  if (num_vars < 2)
    throw std::invalid_argument("critical saturation needs n >= 2");
  if (k < 1)
    throw std::invalid_argument("critical saturation needs k >= 1");
  const double n = num_vars;
  const double inv_k = 1.0 / k;
  const double s = 2.0 * std::pow(std::log2(n), inv_k) / std::pow(n, inv_k);
  return std::min(1.0, s);
}

mpq_class fruitless_probability_exact(Var num_vars, unsigned k, Var nu) {
  if (k < 1 || k > num_vars)
    throw std::invalid_argument("need 1 <= k <= n");
  if (nu > num_vars)
    throw std::invalid_argument("need nu <= n");
  mpz_class favourable;
  mpz_bin_uiui(favourable.get_mpz_t(), nu, k);
  mpz_class all;
  mpz_bin_uiui(all.get_mpz_t(), num_vars, k);
  all <<= k;
  mpq_class p(favourable, all);
  p.canonicalize();
  return p;
}

std::size_t a1_head_size(const Formula &f, unsigned sigma) {
  const std::uint64_t tail = static_cast<std::uint64_t>(sigma) * f.num_vars();
  const std::uint64_t m = f.num_clauses();
  return m > tail ? static_cast<std::size_t>(m - tail) : 0;
}

CountResult count_random_a1(const Formula &f, unsigned sigma, const CountOptions &opts) {
  if (sigma < 1)
    throw std::invalid_argument("sigma must be at least 1");
  const Var n = f.num_vars();
  detail::TraversalConfig cfg;
  cfg.prune = true;
  cfg.head_size = a1_head_size(f, sigma);
  cfg.head_nu_limit = n + 1;
  if (cfg.head_size > 0) {
    const double critical =
        n >= 2 ? critical_saturation(n, static_cast<unsigned>(f.min_width())) : 1.0;
    // Smallest variable count whose saturation is not below critical.
    Var limit = 0;
    while (limit <= n && static_cast<double>(limit) / n < critical)
      ++limit;
    cfg.head_nu_limit = limit;
  }
  return finish(f, detail::traverse(f, cfg, opts), CountMode::a1);
}

} // namespace iecount
