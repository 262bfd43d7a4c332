#pragma once

#include <cstdint>

#include "ffbench/bitstring.hpp"
#include "ffbench/cnf.hpp"
#include "ffbench/rng.hpp"
#include "ffbench/types.hpp"

// Test-side SAT machinery: a uniform random 3-SAT generator in the SATLib
// uf* shape (fixed clause count, three distinct variables per clause,
// random polarity), a small DPLL solver to keep only satisfiable
// instances, and an independent truth-table clause counter.
namespace ffbench::sat_support {

CnfFormula random_3sat(Rng& rng, int num_vars, int num_clauses);

bool dpll_satisfiable(const CnfFormula& formula);

// Regenerates until DPLL accepts, mirroring the filtered-satisfiable
// benchmark sets.
CnfFormula random_satisfiable_3sat(Rng& rng, int num_vars, int num_clauses);

// Independent oracle for the unsatisfied-clause count.
ObjectiveValue truth_table_unsat(const CnfFormula& formula, const BitString& x);

}  // namespace ffbench::sat_support
