#include "iecount/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>

namespace iecount {

ParseError::ParseError(std::size_t line, const std::string &what)
    : CnfError("line " + std::to_string(line) + ": " + what), line_(line) {}

Literal Literal::from_dimacs(int lit) {
  if (lit == 0)
    throw CnfError("literal 0 is reserved as the clause terminator");
  return Literal{static_cast<Var>(std::abs(lit)),
                 lit > 0 ? Sign::positive : Sign::negative};
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  if (literals_.empty())
    throw CnfError("empty clause");
  std::sort(literals_.begin(), literals_.end());
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (literals_[i].var == 0)
      throw CnfError("variable index 0");
    if (i > 0 && literals_[i - 1].var == literals_[i].var)
      throw CnfError("variable " + std::to_string(literals_[i].var) +
                     " repeated in clause");
  }
}

Clause Clause::of(std::initializer_list<int> dimacs) {
  std::vector<Literal> lits;
  lits.reserve(dimacs.size());
  for (int l : dimacs)
    lits.push_back(Literal::from_dimacs(l));
  return Clause(std::move(lits));
}

bool Clause::mentions(Var v) const {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), v,
                             [](const Literal &l, Var x) { return l.var < x; });
  return it != literals_.end() && it->var == v;
}

Formula::Formula(Var num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ == 0)
    throw CnfError("formula needs at least one variable");
  std::set<Clause> seen;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].max_var() > num_vars_)
      throw CnfError("clause " + std::to_string(i + 1) + " mentions variable " +
                     std::to_string(clauses_[i].max_var()) + " > n = " +
                     std::to_string(num_vars_));
    if (!seen.insert(clauses_[i]).second)
      throw CnfError("clause " + std::to_string(i + 1) + " duplicates an earlier clause");
  }
}

std::size_t Formula::min_width() const {
  std::size_t w = 0;
  for (const Clause &c : clauses_)
    w = (w == 0) ? c.size() : std::min(w, c.size());
  return w;
}

Assignment Assignment::from_bits(Var num_vars, std::uint64_t bits) {
  Assignment a(num_vars);
  for (Var v = 1; v <= num_vars; ++v)
    a.values_[v] = ((bits >> (v - 1)) & 1U) != 0;
  return a;
}

namespace {

bool parse_int(std::string_view tok, long long &out) {
  const char *first = tok.data();
  if (!tok.empty() && tok.front() == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

} // namespace

Formula parse_dimacs(std::istream &in) {
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::set<Clause> seen;
  std::size_t line_no = 0;
  std::size_t clause_start = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == 'c')
      continue;
    if (toks[0] == "p") {
      if (have_header)
        throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], n) ||
          !parse_int(toks[3], m) || n < 1 || m < 0 ||
          n > static_cast<long long>(INT32_MAX))
        throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "clause before 'p cnf' header");
    for (auto tok : toks) {
      long long lit = 0;
      if (!parse_int(tok, lit))
        throw ParseError(line_no, "not an integer: '" + std::string(tok) + "'");
      if (lit == 0) {
        if (pending.empty())
          throw ParseError(line_no, "empty clause");
        try {
          Clause c(std::move(pending));
          if (!seen.insert(c).second)
            throw ParseError(clause_start, "duplicate clause");
          clauses.push_back(std::move(c));
        } catch (const ParseError &) {
          throw;
        } catch (const CnfError &e) {
          throw ParseError(clause_start, e.what());
        }
        pending.clear();
        continue;
      }
      if (lit > n || -lit > n)
        throw ParseError(line_no, "variable index " + std::to_string(std::llabs(lit)) +
                                      " exceeds n = " + std::to_string(n));
      if (pending.empty())
        clause_start = line_no;
      pending.push_back(Literal::from_dimacs(static_cast<int>(lit)));
    }
  }
  if (!have_header)
    throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty())
    throw ParseError(clause_start, "clause not terminated by 0");
  if (static_cast<long long>(clauses.size()) != m)
    throw ParseError(line_no, "header declares " + std::to_string(m) + " clauses, found " +
                                  std::to_string(clauses.size()));
  return Formula(static_cast<Var>(n), std::move(clauses));
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void write_dimacs(std::ostream &out, const Formula &f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause &c : f.clauses()) {
    for (const Literal &l : c)
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula &f) {
  std::ostringstream out;
  write_dimacs(out, f);
  return out.str();
}

bool evaluate(const Formula &f, const Assignment &a) {
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause &c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal &l) { return a.satisfies(l); });
  });
}

} // namespace iecount
