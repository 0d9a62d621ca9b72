#pragma once

// Model counting by inclusion-exclusion over monotone sub-formulae.
//
// A sub-formula is monotone when every variable occurs with one sign only.
// Writing O_v / E_v for the number of monotone sub-formulae over v variables
// with an odd / even number of clauses, the model count of an n-variable CNF is
//
//     |S| = 2^n - sum_{v=1..n} (O_v - E_v) * 2^(n-v).
//
// The engines below enumerate monotone sub-formulae with an include/skip
// branch tree that scans clauses in formula order. A clause is fruitless for a
// sub-formula when it is compatible and adds no new variable; if one lies ahead
// of the current node, toggling it pairs every descendant with another of equal
// variable count and opposite parity, so the whole subtree cancels and can be
// skipped without changing the result.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "iecount/cnf.hpp"
#include "json.hpp"

namespace iecount {

// Sign signature of a monotone sub-formula.
class SignState {
public:
  explicit SignState(Var num_vars) : signs_(num_vars + 1, 0) {}

  Var num_vars() const { return static_cast<Var>(signs_.size() - 1); }
  // Number of variables mentioned by the sub-formula.
  Var nu() const { return nu_; }
  // Index (0-based) of the next clause the branch tree will consider.
  std::size_t level() const { return level_; }
  void set_level(std::size_t level) { level_ = level; }

  bool mapped(Var v) const { return signs_[v] != 0; }
  std::optional<Sign> sign_of(Var v) const;

  double saturation() const { return static_cast<double>(nu_) / num_vars(); }

  // Adds the clause's literals to the signature. The clause must be
  // compatible (throws std::logic_error otherwise).
  void add(const Clause &c);

  // Signature of the given clauses of f; throws std::logic_error when they do
  // not form a monotone sub-formula.
  static SignState of(const Formula &f, std::span<const std::size_t> clause_indices);

private:
  std::vector<std::int8_t> signs_;
  Var nu_ = 0;
  std::size_t level_ = 0;
};

// True iff no literal of c clashes with the sign recorded in state.
bool is_compatible(const SignState &state, const Clause &c);

// True iff c is compatible and every variable of c is already mapped.
bool is_fruitless(const SignState &state, const Clause &c);

// True iff some clause f[j] with j >= from is fruitless for state.
bool exists_fruitless_ahead(const SignState &state, const Formula &f, std::size_t from);

// Per-variable-count parity tallies O_v (odd) and E_v (even), v in [0, n].
// Full enumerations record the empty sub-formula once, in even[0].
struct ParityTally {
  std::vector<mpz_class> odd;
  std::vector<mpz_class> even;

  ParityTally() = default;
  explicit ParityTally(Var num_vars) : odd(num_vars + 1), even(num_vars + 1) {}

  Var num_vars() const { return static_cast<Var>(odd.size() - 1); }
  void merge(const ParityTally &other);

  friend bool operator==(const ParityTally &, const ParityTally &) = default;
};

// Raised when the identity yields a value outside [0, 2^n]. For the exact
// engines that means a tally bug; for the split counters it means the
// saturation cutoff discarded a subtree that did not cancel.
class IdentityRangeError : public std::logic_error {
public:
  explicit IdentityRangeError(const mpz_class &value, Var num_vars);
  const mpz_class &value() const { return value_; }

private:
  mpz_class value_;
};

class NodeLimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// 2^n - sum_{v=1..n} (odd[v] - even[v]) * 2^(n-v); the v = 0 slot is ignored.
mpz_class apply_identity(const ParityTally &tally, Var num_vars);
// Same sum without the range check.
mpz_class apply_identity_unchecked(const ParityTally &tally, Var num_vars);

enum class CountMode { exhaustive, pruned, a1, a2 };

std::string_view to_string(CountMode mode);

struct CountResult {
  mpz_class model_count;
  CountMode mode = CountMode::exhaustive;
  std::uint64_t nodes_visited = 0;
  std::uint64_t subtrees_pruned = 0;
  // Head sub-formulae dropped for reaching critical saturation (split modes).
  std::uint64_t saturation_cutoffs = 0;
  bool exact = true;
  ParityTally tally;
};

nlohmann::json to_json(const CountResult &r);

struct CountOptions {
  // Worker threads for the partitioned traversal. Results do not depend on it.
  unsigned threads = 1;
  // Abort with NodeLimitExceeded once more nodes than this are visited; 0 = no
  // limit.
  std::uint64_t node_limit = 0;
};

CountResult signed_count_exhaustive(const Formula &f, const CountOptions &opts = {});
CountResult signed_count_pruned(const Formula &f, const CountOptions &opts = {});

// min(1, 2 * (log2 n)^(1/k) / n^(1/k)). Requires n >= 2, k >= 1.
double critical_saturation(Var num_vars, unsigned k);

// C(nu, k) / (2^k * C(n, k)): chance that a uniform exactly-k clause is
// fruitless for a signature over nu variables.
mpq_class fruitless_probability_exact(Var num_vars, unsigned k, Var nu);

// Split counter. The first max(0, m - sigma*n) clauses form the head, the rest
// the tail. Head sub-formulae are enumerated only while their saturation stays
// below critical_saturation(n, min clause width); each is extended by every
// compatible tail sub-formula. Sound fruitless pruning stays on throughout.
// The result is exact whenever the head is empty.
CountResult count_random_a1(const Formula &f, unsigned sigma, const CountOptions &opts = {});

// Size of the head in the split counter.
std::size_t a1_head_size(const Formula &f, unsigned sigma);

} // namespace iecount
