#include "support/sat_support.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace ffbench::sat_support {

CnfFormula random_3sat(Rng& rng, int num_vars, int num_clauses) {
  CnfFormula formula;
  formula.num_vars = num_vars;
  formula.clauses.reserve(static_cast<std::size_t>(num_clauses));
  for (int c = 0; c < num_clauses; ++c) {
    std::vector<int> vars;
    while (vars.size() < 3) {
      const int v = 1 + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(num_vars)));
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
    std::vector<int> clause;
    for (const int v : vars) clause.push_back(rng.next_bernoulli(0.5) ? v : -v);
    formula.clauses.push_back(std::move(clause));
  }
  return formula;
}

namespace {

// assign[v]: 0 unknown, 1 true, -1 false. The caller restores assign when
// a branch fails, so unit propagation may mutate it freely.
bool dpll(const std::vector<std::vector<int>>& clauses,
          std::vector<std::int8_t>& assign) {
  for (;;) {
    int unit = 0;
    bool all_satisfied = true;
    for (const auto& clause : clauses) {
      bool satisfied = false;
      int open = 0;
      int last_open = 0;
      for (const int lit : clause) {
        const int v = std::abs(lit);
        const std::int8_t want = lit > 0 ? 1 : -1;
        if (assign[v] == 0) {
          ++open;
          last_open = lit;
        } else if (assign[v] == want) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      all_satisfied = false;
      if (open == 0) return false;  // conflict
      if (open == 1 && unit == 0) unit = last_open;
    }
    if (all_satisfied) return true;
    if (unit == 0) break;
    assign[std::abs(unit)] = unit > 0 ? 1 : -1;
  }

  int var = 0;
  for (std::size_t v = 1; v < assign.size(); ++v)
    if (assign[v] == 0) {
      var = static_cast<int>(v);
      break;
    }
  if (var == 0) return false;
  const std::vector<std::int8_t> saved = assign;
  for (const std::int8_t value : {std::int8_t{1}, std::int8_t{-1}}) {
    assign[var] = value;
    if (dpll(clauses, assign)) return true;
    assign = saved;
  }
  return false;
}

}  // namespace

bool dpll_satisfiable(const CnfFormula& formula) {
  std::vector<std::int8_t> assign(
      static_cast<std::size_t>(formula.num_vars) + 1, 0);
  return dpll(formula.clauses, assign);
}

CnfFormula random_satisfiable_3sat(Rng& rng, int num_vars, int num_clauses) {
  for (;;) {
    CnfFormula formula = random_3sat(rng, num_vars, num_clauses);
    if (dpll_satisfiable(formula)) return formula;
  }
}

ObjectiveValue truth_table_unsat(const CnfFormula& formula,
                                 const BitString& x) {
  std::vector<bool> truth(static_cast<std::size_t>(formula.num_vars) + 1);
  for (int v = 1; v <= formula.num_vars; ++v)
    truth[static_cast<std::size_t>(v)] = x[static_cast<std::size_t>(v) - 1] != 0;
  ObjectiveValue unsat = 0;
  for (const auto& clause : formula.clauses) {
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](int lit) {
      const bool value = truth[static_cast<std::size_t>(std::abs(lit))];
      return lit > 0 ? value : !value;
    });
    if (!sat) ++unsat;
  }
  return unsat;
}

}  // namespace ffbench::sat_support
