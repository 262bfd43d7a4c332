#include "ffbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ffbench {

double ert(std::span<const RunRecord> cell) {
  if (cell.empty()) throw std::invalid_argument("ert: empty cell");
  double total_fes = 0.0;
  std::uint64_t successes = 0;
  for (const auto& rec : cell) {
    total_fes += static_cast<double>(rec.used_fes);
    successes += rec.success ? 1 : 0;
  }
  if (successes == 0) return std::numeric_limits<double>::infinity();
  return total_fes / static_cast<double>(successes);
}

namespace {

double mean_fes_all_successful(std::span<const RunRecord> cell,
                               const char* side) {
  if (cell.empty())
    throw UndefinedRatioError(std::string("slowdown_ratio: empty ") + side +
                              " cell");
  double total = 0.0;
  for (const auto& rec : cell) {
    if (!rec.success)
      throw UndefinedRatioError(std::string("slowdown_ratio: failed run in ") +
                                side + " cell");
    total += static_cast<double>(rec.used_fes);
  }
  return total / static_cast<double>(cell.size());
}

}  // namespace

double slowdown_ratio(std::span<const RunRecord> ffa_cell,
                      std::span<const RunRecord> pure_cell,
                      std::size_t scale) {
  const double ffa_mean = mean_fes_all_successful(ffa_cell, "ffa");
  const double pure_mean = mean_fes_all_successful(pure_cell, "pure");
  return ffa_mean / (static_cast<double>(scale + 1) * pure_mean);
}

std::optional<double> exponent_t(std::span<const RunRecord> records) {
  if (records.empty())
    throw std::invalid_argument("exponent_t: no records");
  std::map<std::size_t, std::uint64_t> worst_by_scale;
  for (const auto& rec : records) {
    if (rec.scale < 2)
      throw std::invalid_argument("exponent_t: scale must be >= 2");
    if (!rec.success) return std::nullopt;
    auto& worst = worst_by_scale[rec.scale];
    worst = std::max(worst, rec.used_fes);
  }
  double t = -std::numeric_limits<double>::infinity();
  for (const auto& [scale, worst] : worst_by_scale)
    t = std::max(t, std::log(static_cast<double>(worst)) /
                        std::log(static_cast<double>(scale)));
  return t;
}

std::vector<CellSummary> summarize(std::span<const RunRecord> records) {
  std::map<std::tuple<std::string, std::string, std::string>, CellSummary>
      cells;
  for (const auto& rec : records) {
    auto& cell = cells[{rec.algorithm, rec.problem, rec.instance}];
    if (cell.n_runs == 0) {
      cell.algorithm = rec.algorithm;
      cell.problem = rec.problem;
      cell.instance = rec.instance;
      cell.scale = rec.scale;
    }
    ++cell.n_runs;
    if (rec.success) {
      ++cell.n_success;
      cell.mean_success_fes = cell.mean_success_fes.value_or(0.0) +
                              static_cast<double>(rec.used_fes);
    }
    cell.ert += static_cast<double>(rec.used_fes);  // total FEs for now
    cell.max_used_fes = std::max(cell.max_used_fes, rec.used_fes);
  }
  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (auto& [key, cell] : cells) {
    if (cell.n_success > 0) {
      cell.mean_success_fes =
          *cell.mean_success_fes / static_cast<double>(cell.n_success);
      cell.ert /= static_cast<double>(cell.n_success);
    } else {
      cell.ert = std::numeric_limits<double>::infinity();
    }
    out.push_back(std::move(cell));
  }
  return out;
}

std::string to_string(PlotMetric metric) {
  switch (metric) {
    case PlotMetric::mean:
      return "mean";
    case PlotMetric::ert:
      return "ert";
    case PlotMetric::success_rate:
      return "success";
    case PlotMetric::max:
      return "max";
  }
  return "?";
}

std::string plot_data_csv(std::span<const CellSummary> summaries,
                          PlotMetric metric) {
  std::vector<const CellSummary*> rows;
  rows.reserve(summaries.size());
  for (const auto& cell : summaries) rows.push_back(&cell);
  std::sort(rows.begin(), rows.end(),
            [](const CellSummary* a, const CellSummary* b) {
              return std::tie(a->algorithm, a->problem, a->scale, a->instance) <
                     std::tie(b->algorithm, b->problem, b->scale, b->instance);
            });
  std::ostringstream out;
  out << "algorithm,problem,scale,metric,value\n";
  for (const auto* cell : rows) {
    double value = 0.0;
    switch (metric) {
      case PlotMetric::mean:
        value = cell->mean_success_fes
                    ? *cell->mean_success_fes
                    : std::numeric_limits<double>::quiet_NaN();
        break;
      case PlotMetric::ert:
        value = cell->ert;
        break;
      case PlotMetric::success_rate:
        value = static_cast<double>(cell->n_success) /
                static_cast<double>(cell->n_runs);
        break;
      case PlotMetric::max:
        value = static_cast<double>(cell->max_used_fes);
        break;
    }
    out << cell->algorithm << ',' << cell->problem << ',' << cell->scale << ','
        << to_string(metric) << ',' << value << '\n';
  }
  return out.str();
}

std::string summary_csv(std::span<const CellSummary> summaries) {
  std::ostringstream out;
  out << "algorithm,problem,instance,scale,n_runs,n_success,mean_success_fes,"
         "ert,max_used_fes\n";
  for (const auto& cell : summaries) {
    out << cell.algorithm << ',' << cell.problem << ',';
    if (cell.instance.find(',') != std::string::npos)
      out << '"' << cell.instance << '"';
    else
      out << cell.instance;
    out << ',' << cell.scale << ',' << cell.n_runs << ',' << cell.n_success
        << ',';
    if (cell.mean_success_fes)
      out << *cell.mean_success_fes;
    else
      out << "nan";
    out << ',' << cell.ert << ',' << cell.max_used_fes << '\n';
  }
  return out.str();
}

}  // namespace ffbench
