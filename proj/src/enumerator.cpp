#include "enumerator.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace iecount::detail {

namespace {
constexpr std::uint64_t kFlushEvery = 4096;
}

void TraversalTotals::merge(const TraversalTotals &other) {
  for (std::size_t v = 0; v < odd.size(); ++v) {
    odd[v] += other.odd[v];
    even[v] += other.even[v];
  }
  nodes += other.nodes;
  pruned += other.pruned;
  cutoffs += other.cutoffs;
}

Enumerator::Enumerator(const Formula &f, const TraversalConfig &cfg, NodeBudget *budget)
    : formula_(f), cfg_(cfg), budget_(budget), occurrences_(f.num_vars() + 1),
      width_(f.num_clauses()), matched_(f.num_clauses(), 0), clashed_(f.num_clauses(), 0),
      sign_(f.num_vars() + 1, 0), totals_(f.num_vars()) {
  for (std::size_t j = 0; j < f.num_clauses(); ++j) {
    width_[j] = static_cast<std::uint32_t>(f[j].size());
    for (const Literal &l : f[j])
      occurrences_[l.var].push_back({static_cast<std::uint32_t>(j), l.sign});
  }
  trail_.reserve(f.num_vars());
}

void Enumerator::apply(std::size_t j) {
  for (const Literal &l : formula_[j]) {
    if (sign_[l.var] != 0)
      continue;
    sign_[l.var] = static_cast<std::int8_t>(l.sign);
    ++nu_;
    trail_.push_back(l.var);
    for (const Occurrence &o : occurrences_[l.var]) {
      if (o.sign == l.sign)
        ++matched_[o.clause];
      else
        ++clashed_[o.clause];
    }
  }
}

void Enumerator::rollback(std::size_t mark) {
  while (trail_.size() > mark) {
    const Var v = trail_.back();
    trail_.pop_back();
    const auto s = static_cast<Sign>(sign_[v]);
    for (const Occurrence &o : occurrences_[v]) {
      if (o.sign == s)
        --matched_[o.clause];
      else
        --clashed_[o.clause];
    }
    sign_[v] = 0;
    --nu_;
  }
}

bool Enumerator::fruitless_from(std::size_t from) const {
  for (std::size_t c = from; c < width_.size(); ++c)
    if (matched_[c] == width_[c])
      return true;
  return false;
}

void Enumerator::charge_node() {
  ++totals_.nodes;
  if (budget_ == nullptr || budget_->limit == 0)
    return;
  if (++unflushed_ >= kFlushEvery) {
    budget_->spent.fetch_add(unflushed_, std::memory_order_relaxed);
    unflushed_ = 0;
    if (budget_->spent.load(std::memory_order_relaxed) > budget_->limit)
      budget_->exhausted.store(true, std::memory_order_relaxed);
  }
  if (budget_->exhausted.load(std::memory_order_relaxed))
    throw NodeLimitExceeded("node limit of " + std::to_string(budget_->limit) + " exceeded");
}

void Enumerator::visit(std::size_t j) {
  const std::size_t mark = trail_.size();
  apply(j);
  ++depth_;
  charge_node();
  if (j < cfg_.head_size && nu_ >= cfg_.head_nu_limit) {
    ++totals_.cutoffs;
  } else if (cfg_.prune && fruitless_from(j + 1)) {
    ++totals_.pruned;
  } else {
    if (depth_ % 2 == 1)
      ++totals_.odd[nu_];
    else
      ++totals_.even[nu_];
    for (std::size_t next = j + 1; next < width_.size(); ++next)
      if (clashed_[next] == 0)
        visit(next);
  }
  --depth_;
  rollback(mark);
}

void Enumerator::explore_root_child(std::size_t j) { visit(j); }

TraversalTotals traverse(const Formula &f, const TraversalConfig &cfg, const CountOptions &opts) {
  NodeBudget budget;
  budget.limit = opts.node_limit;

  TraversalTotals totals(f.num_vars());
  // Root: the empty sub-formula.
  totals.nodes = 1;
  totals.even[0] = 1;

  const std::size_t m = f.num_clauses();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, opts.threads), std::max<std::size_t>(m, 1)));

  if (workers == 1) {
    Enumerator e(f, cfg, &budget);
    for (std::size_t j = 0; j < m; ++j)
      e.explore_root_child(j);
    totals.merge(e.totals());
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<TraversalTotals> partial(workers, TraversalTotals(f.num_vars()));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            Enumerator e(f, cfg, &budget);
            for (std::size_t j = next.fetch_add(1); j < m; j = next.fetch_add(1))
              e.explore_root_child(j);
            partial[w] = e.totals();
          } catch (...) {
            {
              std::lock_guard lock(failure_mutex);
              if (!failure)
                failure = std::current_exception();
            }
            budget.exhausted.store(true);
          }
        });
      }
    }
    if (failure)
      std::rethrow_exception(failure);
    for (const TraversalTotals &p : partial)
      totals.merge(p);
  }

  if (opts.node_limit != 0 && totals.nodes > opts.node_limit)
    throw NodeLimitExceeded("node limit of " + std::to_string(opts.node_limit) + " exceeded");
  return totals;
}

ParityTally to_tally(const TraversalTotals &totals) {
  const Var n = static_cast<Var>(totals.odd.size() - 1);
  ParityTally t(n);
  for (Var v = 0; v <= n; ++v) {
    mpz_import(t.odd[v].get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &totals.odd[v]);
    mpz_import(t.even[v].get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &totals.even[v]);
  }
  return t;
}

} // namespace iecount::detail
