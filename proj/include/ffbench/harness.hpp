#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ffbench/algorithms.hpp"
#include "ffbench/problems.hpp"
#include "ffbench/types.hpp"

namespace ffbench {

// One concrete benchmark instance of the run grid.
struct ProblemInstanceSpec {
  std::string problem;  // registry name
  std::size_t scale = 0;
  ProblemParams params;
};

// The full grid: algorithms x instances x runs-per-cell. MAX-SAT cells are
// described by a directory of DIMACS files instead of instance specs; the
// runs of such a cell are spread round-robin over the files.
struct ExperimentSpec {
  std::vector<AlgorithmId> algorithms;
  std::vector<ProblemInstanceSpec> instances;
  std::optional<std::filesystem::path> cnf_dir;
  std::uint32_t runs_per_cell = 100;   // paper protocol: at least 71
  std::uint64_t budget = 10'000'000;   // desk default; paper uses 1e10
  std::uint64_t base_seed = 1;
  AlgorithmParams algo_params;
};

struct RunRecord {
  std::string algorithm;
  std::string problem;
  std::string instance;
  std::size_t scale = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget_fes = 0;
  std::uint64_t used_fes = 0;
  ObjectiveValue best_f = 0;
  bool success = false;
};

// Stable cell seed: base ^ fnv1a64(algorithm|problem|instance-group), plus
// the run index per run. Adding cells to a spec never reseeds existing ones.
std::uint64_t fnv1a64(const std::string& text);
std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& algorithm,
                        const std::string& problem,
                        const std::string& instance_group);

// Runs the whole grid on `parallelism` worker threads. Results come back
// sorted by (algorithm, problem, instance, seed) and are identical for any
// worker count. `cancel`, when set, stops workers between runs; completed
// records are still returned.
std::vector<RunRecord> execute(const ExperimentSpec& spec,
                               unsigned parallelism = 1,
                               std::ostream* progress = nullptr,
                               const std::atomic<bool>* cancel = nullptr);

void write_csv(const std::vector<RunRecord>& records, std::ostream& out);

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(const std::string& message, std::size_t row)
      : std::runtime_error("row " + std::to_string(row) + ": " + message),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

std::vector<RunRecord> read_csv(std::istream& in);

// Parses a non-negative integer that may use scientific notation ("1e7",
// "2.5e6"); anything that does not expand to an exact integer is rejected.
std::uint64_t parse_scaled_uint(const std::string& text);

}  // namespace ffbench
