#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffbench/bitstring.hpp"
#include "ffbench/frequency.hpp"
#include "ffbench/problems.hpp"
#include "ffbench/rng.hpp"
#include "ffbench/types.hpp"

namespace ffbench {

// Observes every objective evaluation of a run, in order.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_evaluation(const BitString& x, ObjectiveValue f) = 0;
};

struct RunOptions {
  std::uint64_t budget = 10'000'000;
  // Trace studies keep stepping past the first optimum; normal runs stop.
  bool stop_on_optimum = true;
  TraceSink* trace = nullptr;
};

// Per-run bookkeeping shared by all algorithms: the FE budget, the best
// solution by objective value, and the run's private Rng. Every objective
// call goes through evaluate() and costs exactly one FE. The best-so-far
// fields feed termination and reporting only; no selection rule of an
// FFA-only algorithm reads them.
class RunContext {
 public:
  RunContext(const Problem& problem, std::uint64_t seed, RunOptions options)
      : problem_(&problem), rng_(seed), options_(options) {
    if (options_.budget < 1)
      throw std::invalid_argument("RunContext: budget must be >= 1");
  }

  ObjectiveValue evaluate(const BitString& x) {
    ++used_;
    const ObjectiveValue f = problem_->evaluate(x);
    if (options_.trace) options_.trace->on_evaluation(x, f);
    if (f < best_f_) {
      best_f_ = f;
      best_x_ = x;
    }
    return f;
  }

  bool out_of_budget() const { return used_ >= options_.budget; }
  bool finished() const {
    return out_of_budget() || (options_.stop_on_optimum && best_f_ == 0);
  }

  std::uint64_t used_fes() const { return used_; }
  ObjectiveValue best_objective() const { return best_f_; }
  const BitString& best_solution() const { return best_x_; }
  const Problem& problem() const { return *problem_; }
  Rng& rng() { return rng_; }

 private:
  const Problem* problem_;
  Rng rng_;
  RunOptions options_;
  std::uint64_t used_ = 0;
  ObjectiveValue best_f_ = std::numeric_limits<ObjectiveValue>::max();
  BitString best_x_;
};

// One search algorithm: init() seeds the state (charging its initial
// evaluations), step() runs one iteration. Both bail out between
// evaluations once the context is finished, so budgets truncate runs at
// evaluation granularity and the optimum-finding FE is the last one spent.
class Algorithm {
 public:
  virtual ~Algorithm() = default;
  virtual void init(RunContext& ctx) = 0;
  virtual void step(RunContext& ctx) = 0;
};

struct AlgorithmParams {
  // Two-individual GA mutation rate p = value/s; default (1+sqrt(5))/2.
  std::optional<double> gga_mutation_numerator;
  // Crossover gate of the frequency-based two-individual GA: by default the
  // gate compares encounter counts; this switch compares raw objective
  // values instead (which forfeits injection invariance).
  bool gfga_gate_on_objective = false;
  // Alternating hybrid overwrite rule: default copies the frequency side's
  // fresh solution whenever it is at least as good as the direct side's
  // current one; the strict variant requires exact objective equality.
  bool eafea_overwrite_strict = false;
};

enum class AlgorithmId { ea, fea, gga, gfga, saga, safga, eafea, safgap };

const std::vector<std::string>& algorithm_names();
std::string to_string(AlgorithmId id);
AlgorithmId parse_algorithm(const std::string& name);  // invalid_argument

std::unique_ptr<Algorithm> make_algorithm(AlgorithmId id,
                                          const AlgorithmParams& params = {});

struct RunResult {
  std::uint64_t used_fes = 0;
  ObjectiveValue best_f = 0;
  bool success = false;
};

// init + step until the optimum is evaluated or the budget is gone.
RunResult run(Algorithm& algorithm, const Problem& problem,
              std::uint64_t seed, const RunOptions& options);
RunResult run(AlgorithmId id, const Problem& problem, std::uint64_t seed,
              std::uint64_t budget, const AlgorithmParams& params = {});

// ---- concrete algorithms ------------------------------------------------
// Exposed so tests can drive single steps and inspect state.

// (1+1) EA: flip Bin>0(s,1/s) bits, accept if not worse.
class OnePlusOneEa final : public Algorithm {
 public:
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  const BitString& current() const { return x_c_; }
  ObjectiveValue current_objective() const { return f_c_; }

 private:
  BitString x_c_;
  ObjectiveValue f_c_ = 0;
};

// (1+1) EA under frequency fitness: same moves, but acceptance compares
// encounter counts after counting both contenders.
class OnePlusOneFea final : public Algorithm {
 public:
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  const BitString& current() const { return x_c_; }
  ObjectiveValue current_objective() const { return f_c_; }
  const FrequencyTable& table() const { return *table_; }

 private:
  BitString x_c_;
  ObjectiveValue f_c_ = 0;
  std::optional<FrequencyTable> table_;
};

// Two-individual GA: uniform crossover only when both parents sit on the
// same objective value, mutation with p = numerator/s, elitist replacement
// of the worse parent.
class Gga final : public Algorithm {
 public:
  explicit Gga(std::optional<double> mutation_numerator = {});
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  double mutation_probability_numerator() const { return numerator_; }
  const BitString& better() const { return x_c_; }
  const BitString& worse() const { return x_d_; }
  ObjectiveValue better_objective() const { return f_c_; }
  ObjectiveValue worse_objective() const { return f_d_; }

 private:
  double numerator_;
  BitString x_c_, x_d_;
  ObjectiveValue f_c_ = 0, f_d_ = 0;
};

// The same GA with every comparison routed through the frequency table;
// parent order is kept sorted by encounter count instead of objective.
class Gfga final : public Algorithm {
 public:
  Gfga(std::optional<double> mutation_numerator, bool gate_on_objective);
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  const BitString& first_parent() const { return x_c_; }
  const BitString& second_parent() const { return x_d_; }
  ObjectiveValue first_objective() const { return f_c_; }
  ObjectiveValue second_objective() const { return f_d_; }

 private:
  double numerator_;
  bool gate_on_objective_;
  BitString x_c_, x_d_;
  ObjectiveValue f_c_ = 0, f_d_ = 0;
  std::optional<FrequencyTable> table_;
};

// Self-adjusting (1+(lambda,lambda)) GA. One Bin>0(s, lambda/s) flip count
// is shared by all mutants of an iteration; crossover offspring equal to a
// parent are not evaluated; the best mutant takes part in the final
// selection. lambda shrinks by F on success, grows by F^(1/4) otherwise,
// clamped to [1, s].
class Saga final : public Algorithm {
 public:
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  double lambda() const { return lambda_; }
  const BitString& current() const { return x_c_; }
  ObjectiveValue current_objective() const { return f_c_; }

 private:
  BitString x_c_;
  ObjectiveValue f_c_ = 0;
  double lambda_ = 1.0;
};

// Frequency-fitness variant of Saga: mutant and offspring selection,
// the lambda success test, and acceptance all compare encounter counts.
// Per iteration the table counts the parent, the best mutant, and each
// evaluated crossover offspring once, right before the final selection.
class Safga final : public Algorithm {
 public:
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  double lambda() const { return lambda_; }
  const BitString& current() const { return x_c_; }
  ObjectiveValue current_objective() const { return f_c_; }
  const FrequencyTable& table() const { return *table_; }

 private:
  BitString x_c_;
  ObjectiveValue f_c_ = 0;
  double lambda_ = 1.0;
  std::optional<FrequencyTable> table_;
};

// Round-robin hybrid: one direct-EA step, then one frequency-EA step per
// iteration. Whenever the frequency side evaluates a solution at least as
// good as the direct side's current one, it overwrites it.
class Eafea final : public Algorithm {
 public:
  explicit Eafea(bool overwrite_strict);
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  std::uint64_t direct_fes() const { return ea_fes_; }
  std::uint64_t frequency_fes() const { return fea_fes_; }
  const BitString& direct_current() const { return ea_x_; }
  ObjectiveValue direct_objective() const { return ea_f_; }
  ObjectiveValue frequency_objective() const { return fea_f_; }

 private:
  bool overwrite_strict_;
  BitString ea_x_, fea_x_;
  ObjectiveValue ea_f_ = 0, fea_f_ = 0;
  std::optional<FrequencyTable> table_;
  std::uint64_t ea_fes_ = 0, fea_fes_ = 0;
};

// Mode-switching hybrid: runs exactly like Saga until the end of the first
// iteration executed with round(lambda) = s, then switches to frequency
// mode; drops back to direct mode at the end of any frequency iteration
// that improved the best-so-far objective. lambda and the table persist
// across switches; the table only moves in frequency mode. When
// round(lambda) = s only a single mutant is created, since all of them
// would be the full complement.
class Safgap final : public Algorithm {
 public:
  enum class Mode { pure, ffa };
  void init(RunContext& ctx) override;
  void step(RunContext& ctx) override;
  Mode mode() const { return mode_; }
  double lambda() const { return lambda_; }

 private:
  BitString x_c_;
  ObjectiveValue f_c_ = 0;
  double lambda_ = 1.0;
  Mode mode_ = Mode::pure;
  std::optional<FrequencyTable> table_;
};

}  // namespace ffbench
