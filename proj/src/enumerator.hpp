#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "iecount/cnf.hpp"
#include "iecount/counter.hpp"

namespace iecount::detail {

struct TraversalConfig {
  bool prune = false;
  // Clauses [0, head_size) form the head.
  std::size_t head_size = 0;
  // A node whose sub-formula uses head clauses only is cut once its variable
  // count reaches this value. n + 1 disables the cutoff.
  Var head_nu_limit = 0;
};

struct TraversalTotals {
  std::vector<std::uint64_t> odd;
  std::vector<std::uint64_t> even;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::uint64_t cutoffs = 0;

  explicit TraversalTotals(Var num_vars) : odd(num_vars + 1, 0), even(num_vars + 1, 0) {}
  void merge(const TraversalTotals &other);
};

// Shared state for a node budget across workers.
struct NodeBudget {
  std::uint64_t limit = 0;
  std::atomic<std::uint64_t> spent{0};
  std::atomic<bool> exhausted{false};
};

// Depth-first include/skip traversal of the monotone sub-formulae of one
// formula. Per-clause counters of matching and clashing literals make the
// compatibility and fruitless tests O(1) per clause.
class Enumerator {
public:
  Enumerator(const Formula &f, const TraversalConfig &cfg, NodeBudget *budget);

  // Explores the subtree whose root sub-formula is {f[j]}.
  void explore_root_child(std::size_t j);

  const TraversalTotals &totals() const { return totals_; }

private:
  struct Occurrence {
    std::uint32_t clause;
    Sign sign;
  };

  void visit(std::size_t j);
  void apply(std::size_t j);
  void rollback(std::size_t mark);
  bool fruitless_from(std::size_t from) const;
  void charge_node();

  const Formula &formula_;
  TraversalConfig cfg_;
  NodeBudget *budget_;
  std::vector<std::vector<Occurrence>> occurrences_;
  std::vector<std::uint32_t> width_;
  std::vector<std::uint32_t> matched_;
  std::vector<std::uint32_t> clashed_;
  std::vector<std::int8_t> sign_;
  std::vector<Var> trail_;
  Var nu_ = 0;
  std::size_t depth_ = 0;
  std::uint64_t unflushed_ = 0;
  TraversalTotals totals_;
};

// Runs the traversal over every root child, on opts.threads workers, and folds
// in the root (the empty sub-formula). Deterministic for any thread count.
TraversalTotals traverse(const Formula &f, const TraversalConfig &cfg, const CountOptions &opts);

ParityTally to_tally(const TraversalTotals &totals);

} // namespace iecount::detail
