#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "iecount/cnf.hpp"
#include "iecount/generator.hpp"
#include "iecount/rng.hpp"

namespace iecount::testing {

// Random formula with n in [lo_n, hi_n], m in [0, max_m], k in {1..4} (k <= n),
// m clamped to the number of distinct clauses available.
inline Formula random_corpus_formula(std::uint64_t seed, Var lo_n, Var hi_n, std::uint64_t max_m) {
  Rng rng(seed);
  const Var n = lo_n + static_cast<Var>(rng.below(hi_n - lo_n + 1));
  unsigned k = 1 + static_cast<unsigned>(rng.below(4));
  if (k > n)
    k = n;
  std::uint64_t m = rng.below(max_m + 1);
  const std::uint64_t available = candidate_clause_count(n, k).get_ui();
  if (m > available)
    m = available;
  return random_formula(GeneratorConfig{n, m, k, rng.next()});
}

inline Formula formula_of(Var n, std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Clause> cs;
  for (auto c : clauses)
    cs.push_back(Clause::of(c));
  return Formula(n, std::move(cs));
}

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout; stderr is discarded.
inline RunResult run(const std::string &cmd) {
  RunResult r;
  FILE *pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

} // namespace iecount::testing
