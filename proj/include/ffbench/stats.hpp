#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffbench/harness.hpp"

namespace ffbench {

// Summary of one experiment cell (one algorithm on one problem instance).
struct CellSummary {
  std::string algorithm;
  std::string problem;
  std::string instance;
  std::size_t scale = 0;
  std::uint32_t n_runs = 0;
  std::uint32_t n_success = 0;
  // Mean FEs of the successful runs; empty when none succeeded.
  std::optional<double> mean_success_fes;
  // Expected running time: all FEs spent, divided by the successes;
  // +infinity when nothing succeeded.
  double ert = 0.0;
  std::uint64_t max_used_fes = 0;
};

double ert(std::span<const RunRecord> cell);  // invalid_argument when empty

class UndefinedRatioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mean(ffa FEs) / ((s+1) * mean(pure FEs)); both cells must be non-empty
// and fully successful, otherwise UndefinedRatioError.
double slowdown_ratio(std::span<const RunRecord> ffa_cell,
                      std::span<const RunRecord> pure_cell, std::size_t scale);

// Worst-case runtime exponent across scales: max over scales of
// log_s(max FEs used at scale s). Empty result mirrors the report marker
// for groups with failed runs. Scales must be >= 2.
std::optional<double> exponent_t(std::span<const RunRecord> records);

// Groups records by (algorithm, problem, instance); output sorted the same.
std::vector<CellSummary> summarize(std::span<const RunRecord> records);

enum class PlotMetric { mean, ert, success_rate, max };
std::string to_string(PlotMetric metric);

// Plot-ready table "algorithm,problem,scale,metric,value", rows sorted by
// algorithm, problem, then ascending scale.
std::string plot_data_csv(std::span<const CellSummary> summaries,
                          PlotMetric metric);

// Full per-cell table, one row per CellSummary with mean and ert side by
// side (mean covers successful runs only; ert covers everything).
std::string summary_csv(std::span<const CellSummary> summaries);

}  // namespace ffbench
