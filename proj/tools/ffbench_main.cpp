// Command-line front end: reproducible experiment grids over the benchmark
// problems, summary statistics over result CSVs, and canned reproduction
// checks. Exit codes: 0 command completed, 1 I/O or data error, 2 usage
// error. Failed optimization runs are data, not errors.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ffbench/algorithms.hpp"
#include "ffbench/cnf.hpp"
#include "ffbench/harness.hpp"
#include "ffbench/problems.hpp"
#include "ffbench/stats.hpp"

using namespace ffbench;

namespace {

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string algorithm_list() { return join(algorithm_names(), ", "); }

std::string problem_list() {
  std::vector<std::string> names;
  for (const auto& info : problem_registry()) names.push_back(info.name);
  names.push_back("maxsat");
  return join(names, ", ");
}

struct RunFlags {
  std::vector<std::string> algos;
  std::string problem;
  std::vector<std::string> scales;
  std::vector<std::string> omegas;
  std::vector<std::size_t> queens_n;
  std::vector<std::size_t> torus_n;
  std::string cnf_dir;
  std::uint32_t runs = 100;
  std::string budget = "1e7";
  std::uint64_t seed = 1;
  std::string out;
  unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
  double gga_p = 0.0;  // 0 = default (1+sqrt(5))/2
};

ExperimentSpec build_spec(const RunFlags& flags) {
  ExperimentSpec spec;
  for (const auto& name : flags.algos) {
    try {
      spec.algorithms.push_back(parse_algorithm(name));
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown algorithm '" + name +
                       "'; registered: " + algorithm_list());
    }
  }
  if (spec.algorithms.empty())
    throw UsageError("--algo must name at least one algorithm");

  spec.runs_per_cell = flags.runs;
  spec.base_seed = flags.seed;
  try {
    spec.budget = parse_scaled_uint(flags.budget);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--budget: ") + e.what());
  }
  if (spec.budget < 1) throw UsageError("--budget must be at least 1");

  if (flags.gga_p != 0.0) {
    const bool uses_gga =
        std::count(spec.algorithms.begin(), spec.algorithms.end(),
                   AlgorithmId::gga) ||
        std::count(spec.algorithms.begin(), spec.algorithms.end(),
                   AlgorithmId::gfga);
    if (!uses_gga)
      throw UsageError("--gga-p has no effect without gga or gfga in --algo");
    if (flags.gga_p <= 0.0) throw UsageError("--gga-p must be positive");
    spec.algo_params.gga_mutation_numerator = flags.gga_p;
  }

  const std::string& problem = flags.problem;
  const bool is_registered =
      std::any_of(problem_registry().begin(), problem_registry().end(),
                  [&](const ProblemInfo& info) { return info.name == problem; });
  if (problem == "maxsat") {
    if (flags.cnf_dir.empty())
      throw UsageError("maxsat needs --cnf-dir with DIMACS *.cnf files");
    if (!flags.scales.empty() || !flags.omegas.empty() ||
        !flags.queens_n.empty() || !flags.torus_n.empty())
      throw UsageError(
          "maxsat instances come from --cnf-dir; --scales/--omega/--n/--N do "
          "not apply");
    spec.cnf_dir = flags.cnf_dir;
    return spec;
  }
  if (!is_registered)
    throw UsageError("unknown problem '" + problem +
                     "'; registered: " + problem_list());
  if (!flags.cnf_dir.empty())
    throw UsageError("--cnf-dir applies to the maxsat problem only");

  const bool wants_omega = problem == "jump" || problem == "plateau";
  if (!flags.omegas.empty() && !wants_omega)
    throw UsageError("--omega applies to jump and plateau only");
  if (wants_omega && flags.omegas.empty())
    throw UsageError(problem + " needs --omega; named widths: " +
                     join(width_spec_names(), ", ") +
                     ", or an explicit integer in (1, s)");
  if (!flags.queens_n.empty() && problem != "nqueens")
    throw UsageError("--n applies to nqueens only");
  if (!flags.torus_n.empty() && problem != "ising2d")
    throw UsageError("--N applies to ising2d only");

  std::vector<std::size_t> scales;
  for (const auto& text : flags.scales) {
    try {
      scales.push_back(static_cast<std::size_t>(parse_scaled_uint(text)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--scales: ") + e.what());
    }
  }
  for (const auto n : flags.queens_n) scales.push_back(n * n);
  for (const auto n : flags.torus_n) scales.push_back(n * n);
  if (scales.empty())
    throw UsageError("give at least one scale via --scales (or --n/--N)");

  for (const auto s : scales) {
    if (!wants_omega) {
      spec.instances.push_back({problem, s, {}});
      continue;
    }
    for (const auto& omega_spec : flags.omegas) {
      std::uint64_t width = 0;
      try {
        width = resolve_width_spec(omega_spec, s);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--omega: ") + e.what() +
                         "; named widths: " + join(width_spec_names(), ", "));
      }
      if (width <= 1 || width >= s)
        throw UsageError("--omega " + omega_spec + " resolves to " +
                         std::to_string(width) + ", outside (1, " +
                         std::to_string(s) + ")");
      spec.instances.push_back({problem, s, {.omega = width}});
    }
  }

  // Validate every instance before any run starts.
  for (const auto& inst : spec.instances) {
    try {
      make_problem(inst.problem, inst.scale, inst.params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return spec;
}

void print_resolved_spec(const ExperimentSpec& spec, std::ostream& out) {
  std::vector<std::string> algos;
  for (const auto id : spec.algorithms) algos.push_back(to_string(id));
  out << "# algos=" << join(algos, ",")
      << " runs_per_cell=" << spec.runs_per_cell << " budget=" << spec.budget
      << " base_seed=" << spec.base_seed;
  if (spec.algo_params.gga_mutation_numerator)
    out << " gga_p=" << *spec.algo_params.gga_mutation_numerator;
  out << "\n";
  for (const auto id : spec.algorithms) {
    const auto algo = to_string(id);
    for (const auto& inst : spec.instances) {
      const auto problem = make_problem(inst.problem, inst.scale, inst.params);
      const auto seed0 = cell_seed(spec.base_seed, algo, problem->name(),
                                   problem->instance());
      out << "# cell " << algo << " " << problem->name() << " "
          << problem->instance() << " seeds=" << seed0 << ".."
          << seed0 + spec.runs_per_cell - 1 << "\n";
    }
    if (spec.cnf_dir) {
      const auto seed0 = cell_seed(spec.base_seed, algo, "maxsat",
                                   spec.cnf_dir->filename().string());
      out << "# cell " << algo << " maxsat dir=" << spec.cnf_dir->string()
          << " seeds=" << seed0 << ".." << seed0 + spec.runs_per_cell - 1
          << "\n";
    }
  }
}

int cmd_run(const RunFlags& flags) {
  const ExperimentSpec spec = build_spec(flags);
  print_resolved_spec(spec, std::cerr);

  std::signal(SIGINT, on_sigint);
  const auto records =
      execute(spec, flags.parallel, &std::cerr, &g_interrupted);

  std::ofstream out(flags.out);
  if (!out) {
    std::cerr << "error: cannot open output file " << flags.out << "\n";
    return 1;
  }
  write_csv(records, out);
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing " << flags.out << "\n";
    return 1;
  }
  if (g_interrupted.load()) {
    std::cerr << "interrupted: wrote " << records.size()
              << " completed records to " << flags.out << "\n";
    return 1;
  }
  std::cerr << "wrote " << records.size() << " records to " << flags.out
            << "\n";
  return 0;
}

struct ReportFlags {
  std::string in;
  std::string metric;
  std::string pair;
  std::string out;
};

int write_report(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return std::cout ? 0 : 1;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: failed writing " << path << "\n";
    return 1;
  }
  return 0;
}

int cmd_report(const ReportFlags& flags) {
  std::ifstream in(flags.in);
  if (!in) {
    std::cerr << "error: cannot open " << flags.in << "\n";
    return 1;
  }
  std::vector<RunRecord> records;
  try {
    records = read_csv(in);
  } catch (const CsvParseError& e) {
    std::cerr << "error: " << flags.in << ": " << e.what() << "\n";
    return 1;
  }

  if (flags.metric == "mean" || flags.metric == "ert" ||
      flags.metric == "success") {
    if (!flags.pair.empty())
      throw UsageError("--pair applies to the slowdown metric only");
    const auto cells = summarize(records);
    const auto metric = flags.metric == "mean"  ? PlotMetric::mean
                        : flags.metric == "ert" ? PlotMetric::ert
                                                : PlotMetric::success_rate;
    return write_report(plot_data_csv(cells, metric), flags.out);
  }

  if (flags.metric == "slowdown") {
    const auto colon = flags.pair.find(':');
    if (colon == std::string::npos)
      throw UsageError("slowdown needs --pair <ffa-algo>:<pure-algo>");
    const std::string ffa = flags.pair.substr(0, colon);
    const std::string pure = flags.pair.substr(colon + 1);
    for (const auto& name : {ffa, pure})
      if (std::find(algorithm_names().begin(), algorithm_names().end(),
                    name) == algorithm_names().end())
        throw UsageError("unknown algorithm '" + name + "' in --pair");

    std::map<std::pair<std::string, std::string>,
             std::pair<std::vector<RunRecord>, std::vector<RunRecord>>>
        cells;
    std::map<std::pair<std::string, std::string>, std::size_t> scales;
    for (const auto& rec : records) {
      const auto key = std::make_pair(rec.problem, rec.instance);
      if (rec.algorithm == ffa) cells[key].first.push_back(rec);
      if (rec.algorithm == pure) cells[key].second.push_back(rec);
      scales[key] = rec.scale;
    }
    std::ostringstream out;
    out << "problem,instance,scale,slowdown\n";
    for (const auto& [key, pair_cells] : cells) {
      if (pair_cells.first.empty() || pair_cells.second.empty()) continue;
      out << key.first << ',';
      if (key.second.find(',') != std::string::npos)
        out << '"' << key.second << '"';
      else
        out << key.second;
      out << ',' << scales[key] << ',';
      try {
        out << slowdown_ratio(pair_cells.first, pair_cells.second,
                              scales[key]);
      } catch (const UndefinedRatioError&) {
        out << "∅";
      }
      out << '\n';
    }
    return write_report(out.str(), flags.out);
  }

  if (flags.metric == "t") {
    std::map<std::pair<std::string, std::string>, std::vector<RunRecord>>
        groups;
    for (const auto& rec : records)
      groups[{rec.algorithm, rec.problem}].push_back(rec);
    std::ostringstream out;
    out << "algorithm,problem,t\n";
    for (const auto& [key, group] : groups) {
      out << key.first << ',' << key.second << ',';
      const auto t = exponent_t(group);
      if (t)
        out << *t;
      else
        out << "∅";
      out << '\n';
    }
    return write_report(out.str(), flags.out);
  }

  throw UsageError("unknown metric '" + flags.metric +
                   "'; one of mean, ert, success, slowdown, t");
}

int cmd_list() {
  std::cout << "algorithms (" << algorithm_names().size() << "):\n";
  for (const auto& name : algorithm_names()) std::cout << "  " << name << "\n";
  std::cout << "problems (" << problem_registry().size() << " + maxsat):\n";
  for (const auto& info : problem_registry()) {
    std::cout << "  " << info.name;
    if (!info.params.empty()) std::cout << "  (" << info.params << ")";
    std::cout << "\n";
  }
  std::cout << "  maxsat  (DIMACS directory via --cnf-dir)\n";
  std::cout << "width specs for --omega: " << join(width_spec_names(), ", ")
            << "\n";
  return 0;
}

// ---- canned reproduction scenarios ------------------------------------------

bool repro_mean(const std::string& title, AlgorithmId algo,
                const std::string& problem, std::size_t scale,
                std::uint32_t runs, double target,
                const AlgorithmParams& params) {
  ExperimentSpec spec;
  spec.algorithms = {algo};
  spec.instances = {{problem, scale, {}}};
  spec.runs_per_cell = runs;
  spec.budget = 10'000'000;
  spec.base_seed = 1;
  spec.algo_params = params;
  const auto records = execute(
      spec, std::max(1u, std::thread::hardware_concurrency()), &std::cerr);
  double total = 0.0;
  std::size_t successes = 0;
  for (const auto& rec : records) {
    total += static_cast<double>(rec.used_fes);
    successes += rec.success;
  }
  const double mean = total / static_cast<double>(records.size());
  const bool pass =
      successes == records.size() && mean >= 0.9 * target && mean <= 1.1 * target;
  std::cout << title << ": mean " << mean << " FEs over " << runs
            << " runs, target " << target << " +-10% -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass;
}

bool repro_trace_invariance() {
  struct Collect final : TraceSink {
    std::vector<BitString> strings;
    void on_evaluation(const BitString& x, ObjectiveValue) override {
      strings.push_back(x);
    }
  };
  const auto onemax = make_problem("onemax", 32);
  const auto trap = make_problem("trap", 32);
  const auto jump = make_problem("jump", 32, {.omega = 6});
  const auto trace = [](AlgorithmId id, const Problem& p, std::uint64_t seed) {
    Collect sink;
    auto algo = make_algorithm(id);
    run(*algo, p, seed, RunOptions{4000, false, &sink});
    return sink.strings;
  };
  int equal = 0;
  for (const auto id :
       {AlgorithmId::fea, AlgorithmId::gfga, AlgorithmId::safga})
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto base = trace(id, *onemax, seed);
      if (base == trace(id, *trap, seed) && base == trace(id, *jump, seed))
        ++equal;
    }
  const bool pass = equal == 60;
  std::cout << "trace-invariance: " << equal
            << "/60 traces (fea,gfga,safga x 20 seeds) identical across "
               "onemax/trap/jump -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass;
}

bool repro_twomax_fea() {
  ExperimentSpec spec;
  spec.algorithms = {AlgorithmId::fea};
  spec.instances = {{"twomax", 32, {}}, {"twomax", 64, {}},
                    {"twomax", 128, {}}};
  spec.runs_per_cell = 71;
  spec.budget = 10'000'000;
  spec.base_seed = 1;
  const auto records = execute(
      spec, std::max(1u, std::thread::hardware_concurrency()), &std::cerr);
  bool pass = true;
  for (const auto& cell : summarize(records)) {
    const double bound = static_cast<double>(cell.scale) * cell.scale *
                         std::log(static_cast<double>(cell.scale));
    const bool ok = cell.n_success == cell.n_runs && cell.mean_success_fes &&
                    *cell.mean_success_fes < bound;
    std::cout << "twomax-fea s=" << cell.scale << ": success "
              << cell.n_success << "/" << cell.n_runs << ", mean "
              << (cell.mean_success_fes ? *cell.mean_success_fes : -1.0)
              << " < " << bound << " -> " << (ok ? "ok" : "violated") << "\n";
    pass = pass && ok;
  }
  std::cout << "twomax-fea -> " << (pass ? "PASS" : "FAIL") << "\n";
  return pass;
}

int cmd_repro(const std::string& name) {
  bool pass = false;
  if (name == "onemax-saga-5000") {
    pass = repro_mean("onemax-saga-5000", AlgorithmId::saga, "onemax", 5000,
                      100, 35590.0, {});
  } else if (name == "onemax-gga-5000") {
    AlgorithmParams params;
    params.gga_mutation_numerator = 0.773581;
    pass = repro_mean("onemax-gga-5000", AlgorithmId::gga, "onemax", 5000, 100,
                      38502.0, params);
  } else if (name == "leadingones-saga-100") {
    pass = repro_mean("leadingones-saga-100", AlgorithmId::saga, "leadingones",
                      100, 500, 14980.0, {});
  } else if (name == "trace-invariance") {
    pass = repro_trace_invariance();
  } else if (name == "twomax-fea") {
    pass = repro_twomax_fea();
  } else {
    throw UsageError(
        "unknown repro '" + name +
        "'; one of onemax-saga-5000, onemax-gga-5000, leadingones-saga-100, "
        "trace-invariance, twomax-fea");
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-fitness benchmark harness"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand(
      "run", "run an experiment grid and write the results CSV");
  run_cmd
      ->add_option("--algo", run_flags.algos,
                   "comma-separated algorithms: " + algorithm_list())
      ->required()
      ->delimiter(',');
  run_cmd
      ->add_option("--problem", run_flags.problem,
                   "problem: " + problem_list())
      ->required();
  run_cmd
      ->add_option("--scales", run_flags.scales,
                   "comma-separated bit-string lengths")
      ->delimiter(',');
  run_cmd
      ->add_option("--omega", run_flags.omegas,
                   "jump/plateau width(s): integer or named spec (" +
                       join(width_spec_names(), ", ") + ")")
      ->delimiter(',');
  run_cmd
      ->add_option("--n", run_flags.queens_n,
                   "board side(s) for nqueens, adds scales n^2")
      ->delimiter(',');
  run_cmd
      ->add_option("--N", run_flags.torus_n,
                   "torus side(s) for ising2d, adds scales N^2")
      ->delimiter(',');
  run_cmd->add_option("--cnf-dir", run_flags.cnf_dir,
                      "directory of DIMACS *.cnf files (maxsat)");
  run_cmd->add_option("--runs", run_flags.runs, "runs per grid cell")
      ->default_val(100);
  run_cmd
      ->add_option("--budget", run_flags.budget,
                   "FE budget per run, scientific notation ok (1e7)")
      ->default_val("1e7");
  run_cmd->add_option("--seed", run_flags.seed, "base seed")->default_val(1);
  run_cmd->add_option("--out", run_flags.out, "output CSV path")->required();
  run_cmd->add_option("--parallel", run_flags.parallel, "worker threads")
      ->default_val(std::max(1u, std::thread::hardware_concurrency()));
  run_cmd->add_option("--gga-p", run_flags.gga_p,
                      "override gga/gfga mutation numerator (p = value/s)");

  ReportFlags report_flags;
  auto* report_cmd = app.add_subcommand(
      "report", "compute summary statistics from a results CSV");
  report_cmd->add_option("--in", report_flags.in, "input results CSV")
      ->required();
  report_cmd
      ->add_option("--metric", report_flags.metric,
                   "one of mean, ert, success, slowdown, t")
      ->required();
  report_cmd->add_option("--pair", report_flags.pair,
                         "slowdown pairing <ffa-algo>:<pure-algo>");
  report_cmd->add_option("--out", report_flags.out,
                         "output path (default stdout)");

  auto* list_cmd =
      app.add_subcommand("list", "list registered algorithms and problems");

  std::string repro_name;
  auto* repro_cmd = app.add_subcommand(
      "repro", "run a canned reproduction scenario and print PASS/FAIL");
  repro_cmd
      ->add_option("name", repro_name,
                   "onemax-saga-5000, onemax-gga-5000, leadingones-saga-100, "
                   "trace-invariance, twomax-fea")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (report_cmd->parsed()) return cmd_report(report_flags);
    if (list_cmd->parsed()) return cmd_list();
    if (repro_cmd->parsed()) return cmd_repro(repro_name);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
