#include "iecount/inflation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace iecount {

namespace {

constexpr int kMaxDraws = 64;

struct Draw {
  std::vector<Var> chosen;
  std::vector<Clause> inflated;
  std::size_t tail = 0;
};

Draw draw_inflation(const Clause &c, unsigned z, Var num_vars, Rng &rng) {
  std::vector<Var> pool;
  pool.reserve(num_vars - c.size());
  for (Var v = 1; v <= num_vars; ++v)
    if (!c.mentions(v))
      pool.push_back(v);
  if (pool.size() < z)
    throw std::invalid_argument("clause of width " + std::to_string(c.size()) +
                                " cannot be inflated by " + std::to_string(z) +
                                " variables over n = " + std::to_string(num_vars));
  // Partial Fisher-Yates: the first z slots become a uniform z-subset.
  for (unsigned i = 0; i < z; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[pick]);
  }
  Draw d;
  d.chosen.assign(pool.begin(), pool.begin() + z);
  std::sort(d.chosen.begin(), d.chosen.end());

  const std::size_t patterns = std::size_t{1} << z;
  d.inflated.reserve(patterns);
  for (std::size_t bits = 0; bits < patterns; ++bits) {
    std::vector<Literal> lits(c.begin(), c.end());
    for (unsigned i = 0; i < z; ++i)
      lits.push_back(Literal{d.chosen[i], ((bits >> i) & 1U) ? Sign::negative : Sign::positive});
    d.inflated.emplace_back(std::move(lits));
  }
  d.tail = static_cast<std::size_t>(rng.below(patterns));
  return d;
}

// Distinct-tail assignment over entries by augmenting paths. Each entry keeps
// its randomly drawn tail unless another entry already owns that clause and
// cannot move elsewhere.
class TailMatching {
public:
  // Whether a new entry d could be added with all tails distinct. Leaves the
  // assignment unchanged.
  bool can_place(std::vector<Draw> &draws, const Draw &d) {
    if (!owner_.contains(d.inflated[d.tail]))
      return true;
    draws.push_back(d);
    const auto saved_owner = owner_;
    std::vector<std::size_t> saved_tails;
    for (const Draw &e : draws)
      saved_tails.push_back(e.tail);
    const bool ok = place(draws, draws.size() - 1);
    owner_ = saved_owner;
    draws.pop_back();
    for (std::size_t i = 0; i < draws.size(); ++i)
      draws[i].tail = saved_tails[i];
    return ok;
  }

  bool place(std::vector<Draw> &draws, std::size_t entry) {
    std::vector<bool> visited(draws.size(), false);
    return augment(draws, entry, visited);
  }

private:
  bool augment(std::vector<Draw> &draws, std::size_t entry, std::vector<bool> &visited) {
    visited[entry] = true;
    Draw &d = draws[entry];
    const std::size_t count = d.inflated.size();
    // The drawn tail first, then the other patterns in order.
    for (std::size_t step = 0; step < count; ++step) {
      const std::size_t cand = (d.tail + step) % count;
      if (!owner_.contains(d.inflated[cand]))
        return claim(draws, entry, cand);
    }
    for (std::size_t step = 0; step < count; ++step) {
      const std::size_t cand = (d.tail + step) % count;
      const std::size_t other = owner_.at(d.inflated[cand]);
      if (other != entry && !visited[other] && augment(draws, other, visited))
        return claim(draws, entry, cand);
    }
    return false;
  }

  bool claim(std::vector<Draw> &draws, std::size_t entry, std::size_t cand) {
    Draw &d = draws[entry];
    auto it = owner_.find(d.inflated[d.tail]);
    if (it != owner_.end() && it->second == entry)
      owner_.erase(it);
    d.tail = cand;
    owner_[d.inflated[cand]] = entry;
    return true;
  }

  std::map<Clause, std::size_t> owner_;
};

std::size_t pass_count(std::size_t m, unsigned sigma, Var num_vars) {
  if (m == 0)
    return 0;
  const std::uint64_t target = static_cast<std::uint64_t>(sigma) * num_vars;
  if (m >= target)
    return 1;
  return static_cast<std::size_t>((target + m - 1) / m);
}

std::vector<int> to_ints(const Clause &c) {
  std::vector<int> out;
  out.reserve(c.size());
  for (const Literal &l : c)
    out.push_back(l.to_dimacs());
  return out;
}

Clause from_ints(const std::vector<int> &lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (int l : lits)
    out.push_back(Literal::from_dimacs(l));
  return Clause(std::move(out));
}

} // namespace

mpz_class inflation_capacity(const Clause &c, unsigned z, Var num_vars) {
  if (c.size() + z > num_vars)
    return 0;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), num_vars - c.size(), z);
  return binom << z;
}

bool has_distinct_tails(const Formula &f, unsigned sigma) {
  if (sigma < 1)
    throw std::invalid_argument("sigma must be at least 1");
  const Var n = f.num_vars();
  const unsigned z = inflation_width(n);
  const std::size_t passes = pass_count(f.num_clauses(), sigma, n);
  const mpz_class total(std::to_string(passes * f.num_clauses()));

  // A clause with at least `total` inflations can always be served last, so
  // only the tight ones need an explicit matching.
  std::vector<std::vector<Clause>> options;
  for (const Clause &c : f.clauses()) {
    const mpz_class cap = inflation_capacity(c, z, n);
    if (cap < mpz_class(std::to_string(passes)))
      return false;
    if (cap >= total)
      continue;
    std::vector<Var> pool;
    for (Var v = 1; v <= n; ++v)
      if (!c.mentions(v))
        pool.push_back(v);
    std::vector<Clause> all;
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.end() - z, pick.end(), true);
    do {
      for (std::size_t bits = 0; bits < (std::size_t{1} << z); ++bits) {
        std::vector<Literal> lits(c.begin(), c.end());
        std::size_t i = 0;
        for (std::size_t p = 0; p < pool.size(); ++p)
          if (pick[p])
            lits.push_back(Literal{pool[p], ((bits >> i++) & 1U) ? Sign::negative : Sign::positive});
        all.emplace_back(std::move(lits));
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
    for (std::size_t p = 0; p < passes; ++p)
      options.push_back(all);
  }

  std::map<Clause, std::size_t> owner;
  std::function<bool(std::size_t, std::vector<bool> &)> augment = [&](std::size_t e, std::vector<bool> &seen) {
    for (const Clause &q : options[e]) {
      auto it = owner.find(q);
      if (it == owner.end()) {
        owner.emplace(q, e);
        return true;
      }
    }
    for (const Clause &q : options[e]) {
      const std::size_t other = owner.at(q);
      if (!seen[other]) {
        seen[other] = true;
        if (augment(other, seen)) {
          owner[q] = e;
          return true;
        }
      }
    }
    return false;
  };
  for (std::size_t e = 0; e < options.size(); ++e) {
    std::vector<bool> seen(options.size(), false);
    seen[e] = true;
    if (!augment(e, seen))
      return false;
  }
  return true;
}

unsigned inflation_width(Var num_vars) {
  if (num_vars < 4)
    throw std::invalid_argument("inflation needs n >= 4 (got n = " + std::to_string(num_vars) + ")");
  unsigned z = 1;
  // n <= 2^(2^z); 2^(2^5) already exceeds any 32-bit n.
  while (z < 5 && static_cast<std::uint64_t>(num_vars) > (std::uint64_t{1} << (1U << z)))
    ++z;
  return z;
}

std::vector<Clause> inflate_clause(const Clause &c, unsigned z, Var num_vars, Rng &rng) {
  if (z < 1)
    throw std::invalid_argument("inflation needs z >= 1");
  return draw_inflation(c, z, num_vars, rng).inflated;
}

Inflation inflate_formula(const Formula &f, unsigned sigma, Rng &rng) {
  if (sigma < 1)
    throw std::invalid_argument("sigma must be at least 1");
  const Var n = f.num_vars();
  const unsigned z = inflation_width(n);
  for (std::size_t i = 0; i < f.num_clauses(); ++i)
    if (f[i].size() + z > n)
      throw std::invalid_argument("clause " + std::to_string(i + 1) + " has width " +
                                  std::to_string(f[i].size()) + "; inflating by z = " +
                                  std::to_string(z) + " needs at most " + std::to_string(n - z));

  InflationRecord rec;
  rec.z = z;
  rec.sigma = sigma;
  rec.passes = pass_count(f.num_clauses(), sigma, n);
  if (!has_distinct_tails(f, sigma))
    throw std::invalid_argument("the " + std::to_string(rec.passes * f.num_clauses()) +
                                " inflation entries cannot all receive distinct tail clauses over n = " +
                                std::to_string(n));

  std::set<Clause> emitted;
  TailMatching tails;
  std::vector<Draw> draws;
  for (std::size_t p = 0; p < rec.passes; ++p) {
    for (const Clause &c : f.clauses()) {
      // Prefer a draw whose clauses collide with nothing emitted so far; its
      // own random tail is then free. Otherwise keep the first draw that admits
      // a distinct tail assignment, reassigning earlier tails if needed.
      std::optional<Draw> accepted;
      for (int attempt = 0; attempt < kMaxDraws && !accepted; ++attempt) {
        Draw d = draw_inflation(c, z, n, rng);
        const bool clean = std::none_of(d.inflated.begin(), d.inflated.end(),
                                        [&](const Clause &q) { return emitted.contains(q); });
        if (clean || tails.can_place(draws, d))
          accepted = std::move(d);
      }
      if (!accepted)
        throw std::runtime_error("could not give every inflation entry a distinct tail clause after " +
                                 std::to_string(kMaxDraws) + " draws");
      emitted.insert(accepted->inflated.begin(), accepted->inflated.end());
      draws.push_back(std::move(*accepted));
      tails.place(draws, draws.size() - 1);
    }
  }
  for (std::size_t i = 0; i < draws.size(); ++i) {
    Draw &d = draws[i];
    Clause tail = d.inflated[d.tail];
    rec.entries.push_back(InflationEntry{f[i % f.num_clauses()], std::move(d.chosen), std::move(d.inflated),
                                         std::move(tail)});
  }
  return Inflation{Formula(n, assemble_inflation(rec)), std::move(rec)};
}

std::vector<Clause> assemble_inflation(const InflationRecord &rec) {
  std::set<Clause> tail_set;
  for (const InflationEntry &e : rec.entries)
    tail_set.insert(e.tail);
  std::vector<Clause> out;
  std::set<Clause> head_seen;
  for (const InflationEntry &e : rec.entries)
    for (const Clause &q : e.inflated)
      if (!tail_set.contains(q) && head_seen.insert(q).second)
        out.push_back(q);
  for (const InflationEntry &e : rec.entries)
    out.push_back(e.tail);
  return out;
}

InflationCheck verify_inflation(const Formula &f, const Formula &fprime, const InflationRecord &rec) {
  auto fail = [](std::string why) { return InflationCheck{false, std::move(why)}; };
  const Var n = f.num_vars();
  const std::size_t m = f.num_clauses();
  if (fprime.num_vars() != n)
    return fail("inflated formula has a different variable count");
  if (rec.entries.size() != rec.passes * m)
    return fail("record has " + std::to_string(rec.entries.size()) + " entries, expected " +
                std::to_string(rec.passes * m));
  if (n < 4 || rec.z != inflation_width(n))
    return fail("record uses z = " + std::to_string(rec.z) + ", not the width for n = " +
                std::to_string(n));
  if (rec.sigma < 1 || rec.passes != pass_count(m, rec.sigma, n))
    return fail("record pass count " + std::to_string(rec.passes) + " does not match sigma = " +
                std::to_string(rec.sigma));

  const std::size_t patterns = std::size_t{1} << rec.z;
  std::set<Clause> tails;
  for (std::size_t t = 0; t < rec.entries.size(); ++t) {
    const InflationEntry &e = rec.entries[t];
    const std::string where = "entry " + std::to_string(t) + ": ";
    if (!(e.original == f[t % m]))
      return fail(where + "original clause does not match formula clause " + std::to_string(t % m + 1));
    if (e.chosen.size() != rec.z)
      return fail(where + "expected " + std::to_string(rec.z) + " added variables");
    for (std::size_t i = 0; i < e.chosen.size(); ++i) {
      const Var v = e.chosen[i];
      if (v < 1 || v > n)
        return fail(where + "added variable " + std::to_string(v) + " out of range");
      if (e.original.mentions(v))
        return fail(where + "added variable " + std::to_string(v) + " already occurs in the clause");
      if (i > 0 && e.chosen[i - 1] >= v)
        return fail(where + "added variables not distinct and ascending");
    }
    if (e.inflated.size() != patterns)
      return fail(where + "expected " + std::to_string(patterns) + " inflated clauses");

    // Every inflated clause is original plus one literal per added variable;
    // together they must realise all 2^z sign patterns.
    std::vector<bool> seen(patterns, false);
    for (const Clause &q : e.inflated) {
      if (q.size() != e.original.size() + rec.z)
        return fail(where + "inflated clause has the wrong width");
      for (const Literal &l : e.original)
        if (std::find(q.begin(), q.end(), l) == q.end())
          return fail(where + "inflated clause does not contain the original clause");
      std::size_t bits = 0;
      for (std::size_t i = 0; i < e.chosen.size(); ++i) {
        auto it = std::find_if(q.begin(), q.end(), [&](const Literal &l) { return l.var == e.chosen[i]; });
        if (it == q.end())
          return fail(where + "inflated clause misses added variable " + std::to_string(e.chosen[i]));
        if (it->sign == Sign::negative)
          bits |= std::size_t{1} << i;
      }
      if (seen[bits])
        return fail(where + "sign pattern " + std::to_string(bits) + " occurs twice");
      seen[bits] = true;
    }
    if (std::find(e.inflated.begin(), e.inflated.end(), e.tail) == e.inflated.end())
      return fail(where + "tail clause is not one of the inflated clauses");
    if (!tails.insert(e.tail).second)
      return fail(where + "tail clause repeats an earlier tail");
  }

  const std::vector<Clause> expected = assemble_inflation(rec);
  if (expected.size() != fprime.num_clauses())
    return fail("inflated formula has " + std::to_string(fprime.num_clauses()) +
                " clauses, record describes " + std::to_string(expected.size()));
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!(expected[i] == fprime[i]))
      return fail("inflated formula differs from the record at clause " + std::to_string(i + 1));
  return {};
}

CountResult count_a2(const Formula &f, unsigned sigma, Rng &rng, const CountOptions &opts) {
  const Inflation inf = inflate_formula(f, sigma, rng);
  CountResult r = count_random_a1(inf.formula, sigma, opts);
  r.mode = CountMode::a2;
  r.exact = false;
  return r;
}

nlohmann::json to_json(const InflationRecord &rec) {
  nlohmann::json entries = nlohmann::json::array();
  for (const InflationEntry &e : rec.entries) {
    nlohmann::json inflated = nlohmann::json::array();
    for (const Clause &q : e.inflated)
      inflated.push_back(to_ints(q));
    entries.push_back({{"original", to_ints(e.original)},
                       {"chosenVariables", e.chosen},
                       {"inflatedClauses", std::move(inflated)},
                       {"tailClause", to_ints(e.tail)}});
  }
  return {{"z", rec.z}, {"sigma", rec.sigma}, {"passes", rec.passes}, {"entries", std::move(entries)}};
}

InflationRecord record_from_json(const nlohmann::json &j) {
  InflationRecord rec;
  rec.z = j.at("z").get<unsigned>();
  rec.sigma = j.at("sigma").get<unsigned>();
  rec.passes = j.at("passes").get<std::size_t>();
  for (const auto &je : j.at("entries")) {
    std::vector<Clause> inflated;
    for (const auto &jq : je.at("inflatedClauses"))
      inflated.push_back(from_ints(jq.get<std::vector<int>>()));
    rec.entries.push_back(InflationEntry{from_ints(je.at("original").get<std::vector<int>>()),
                                         je.at("chosenVariables").get<std::vector<Var>>(),
                                         std::move(inflated),
                                         from_ints(je.at("tailClause").get<std::vector<int>>())});
  }
  return rec;
}

} // namespace iecount
