#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffbench/bitstring.hpp"
#include "ffbench/problems.hpp"
#include "ffbench/types.hpp"

namespace ffbench {

// A CNF formula over num_vars Boolean variables. Literal v > 0 reads
// variable v, v < 0 reads its negation; variables are numbered from 1.
// Duplicate literals and tautological clauses are kept verbatim, matching
// what uniform random 3-SAT generators emit.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

class DimacsParseError : public std::runtime_error {
 public:
  DimacsParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// DIMACS CNF reader. Skips 'c' comment lines and the '%' / '0' trailer
// lines SATLib files end with; clauses are whitespace-separated literals
// terminated by 0 and may span lines. Validates the header clause count
// and the literal range.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_file(const std::filesystem::path& path);

std::string to_dimacs(const CnfFormula& formula);

// Number of clauses with no satisfied literal under assignment x
// (x[v-1] = 1 sets variable v true). 0 means x satisfies the formula.
ObjectiveValue maxsat_unsatisfied(const CnfFormula& formula,
                                  const BitString& x);

class MaxSatProblem final : public Problem {
 public:
  MaxSatProblem(CnfFormula formula, std::string instance_label)
      : Problem("maxsat", std::move(instance_label),
                static_cast<std::size_t>(formula.num_vars),
                static_cast<ObjectiveValue>(formula.num_clauses())),
        formula_(std::move(formula)) {}

  ObjectiveValue evaluate(const BitString& x) const override {
    return maxsat_unsatisfied(formula_, x);
  }

  const CnfFormula& formula() const { return formula_; }

 private:
  CnfFormula formula_;
};

// All "*.cnf" files directly under dir, sorted by filename for stable
// run-to-instance assignment.
std::vector<std::filesystem::path> list_cnf_files(
    const std::filesystem::path& dir);

}  // namespace ffbench
