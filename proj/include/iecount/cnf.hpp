#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iecount {

using Var = std::uint32_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr Sign operator-(Sign s) {
  return s == Sign::positive ? Sign::negative : Sign::positive;
}

// Raised when a clause or formula would violate its invariants.
class CnfError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public CnfError {
public:
  ParseError(std::size_t line, const std::string &what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct Literal {
  Var var = 0;
  Sign sign = Sign::positive;

  // DIMACS encoding: +v or -v.
  int to_dimacs() const {
    return sign == Sign::positive ? static_cast<int>(var) : -static_cast<int>(var);
  }
  static Literal from_dimacs(int lit);

  friend auto operator<=>(const Literal &, const Literal &) = default;
};

// A set of literals over distinct variables, stored sorted by variable.
class Clause {
public:
  explicit Clause(std::vector<Literal> literals);
  // Convenience: Clause::of({1, -2, 3}).
  static Clause of(std::initializer_list<int> dimacs);

  std::size_t size() const { return literals_.size(); }
  std::span<const Literal> literals() const { return literals_; }
  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }
  const Literal &operator[](std::size_t i) const { return literals_[i]; }

  Var max_var() const { return literals_.back().var; }
  bool mentions(Var v) const;

  friend bool operator==(const Clause &, const Clause &) = default;
  friend auto operator<=>(const Clause &, const Clause &) = default;

private:
  std::vector<Literal> literals_;
};

// Ordered sequence of pairwise distinct clauses over variables 1..n. The
// order is significant: the split counter treats the last clauses as the tail.
class Formula {
public:
  Formula(Var num_vars, std::vector<Clause> clauses);

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  std::span<const Clause> clauses() const { return clauses_; }
  const Clause &operator[](std::size_t i) const { return clauses_[i]; }

  // Smallest clause width; 0 for the empty formula.
  std::size_t min_width() const;
  double density() const {
    return static_cast<double>(clauses_.size()) / static_cast<double>(num_vars_);
  }

  friend bool operator==(const Formula &, const Formula &) = default;

private:
  Var num_vars_;
  std::vector<Clause> clauses_;
};

// Total truth assignment over variables 1..n.
class Assignment {
public:
  explicit Assignment(Var num_vars) : values_(num_vars + 1, false) {}
  // Bit (v - 1) of bits gives the value of variable v. Requires n <= 64.
  static Assignment from_bits(Var num_vars, std::uint64_t bits);

  Var num_vars() const { return static_cast<Var>(values_.size() - 1); }
  bool operator[](Var v) const { return values_[v]; }
  void set(Var v, bool value) { values_[v] = value; }

  bool satisfies(const Literal &lit) const {
    return values_[lit.var] == (lit.sign == Sign::positive);
  }

private:
  std::vector<bool> values_;
};

Formula parse_dimacs(std::istream &in);
Formula parse_dimacs(std::string_view text);

void write_dimacs(std::ostream &out, const Formula &f);
std::string to_dimacs(const Formula &f);

bool evaluate(const Formula &f, const Assignment &a);

} // namespace iecount
