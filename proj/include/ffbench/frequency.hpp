#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ffbench/types.hpp"

namespace ffbench {

// Encounter-frequency table over the objective range [0, UB]. Selection
// under frequency fitness minimizes these counters instead of the objective
// itself. Counters only grow; 64 bits so that budgets up to 1e10 cannot
// wrap them. Dense storage: the largest UB in scope is s(s+1)/2.
class FrequencyTable {
 public:
  explicit FrequencyTable(ObjectiveValue upper_bound)
      : counts_(upper_bound + 1, 0) {}

  // One encounter of objective value y. A value above UB means the bound
  // the table was sized with is wrong; that is a contract violation.
  void increment(ObjectiveValue y) {
    if (y >= counts_.size())
      throw std::out_of_range("FrequencyTable::increment: value exceeds UB");
    ++counts_[y];
    ++total_;
  }

  std::uint64_t fitness(ObjectiveValue y) const {
    if (y >= counts_.size())
      throw std::out_of_range("FrequencyTable::fitness: value exceeds UB");
    return counts_[y];
  }

  ObjectiveValue upper_bound() const { return counts_.size() - 1; }
  std::uint64_t total_increments() const { return total_; }

  // Post-mortem dump: one "value,count" row per value seen at least once.
  void dump_csv(std::ostream& out) const {
    out << "value,count\n";
    for (std::size_t y = 0; y < counts_.size(); ++y)
      if (counts_[y] != 0) out << y << ',' << counts_[y] << '\n';
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace ffbench
