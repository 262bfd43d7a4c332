#include "ffbench/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ffbench/ops.hpp"

// Randomness discipline: every iteration draws in control-flow order
// (crossover masks where crossover comes first, then the flip count, then
// mutation indexes, then selection tie-breaks). Paired-seed and
// cross-problem trace tests depend on this order never changing.

namespace ffbench {

namespace {

constexpr double kLambdaShrink = 1.5;  // F
// F^(1/4); sqrt twice because sqrt is correctly rounded on every platform.
const double kLambdaGrow = std::sqrt(std::sqrt(kLambdaShrink));

std::uint64_t offspring_count(double lambda, std::size_t s) {
  const auto rounded = static_cast<std::uint64_t>(std::llround(lambda));
  return std::clamp<std::uint64_t>(rounded, 1, s);
}

// One direct-mode (1+(lambda,lambda)) iteration, shared by Saga and the
// pure mode of Safgap so that paired seeds replay FE-for-FE. mutant_count
// is lam except when the caller applies the single-mutant shortcut.
void saga_iteration(RunContext& ctx, BitString& x_c, ObjectiveValue& f_c,
                    double& lambda, std::uint64_t lam,
                    std::uint64_t mutant_count) {
  const std::size_t s = ctx.problem().scale();
  const double p = lambda / static_cast<double>(s);
  const double c = 1.0 / lambda;
  const std::uint64_t flips = binomial_gt0(ctx.rng(), s, p);

  BitString best_mut;
  ObjectiveValue best_mut_f = 0;
  bool have_mut = false;
  for (std::uint64_t i = 0; i < mutant_count; ++i) {
    if (ctx.finished()) return;
    BitString mutant = mutate_exact(ctx.rng(), x_c, flips);
    const ObjectiveValue f = ctx.evaluate(mutant);
    if (!have_mut || f < best_mut_f) {
      best_mut = std::move(mutant);
      best_mut_f = f;
      have_mut = true;
    }
  }
  if (ctx.finished()) return;

  // The best mutant takes part in the selection and wins ties; offspring
  // equal to either parent are skipped, their value is already known.
  BitString x_n = best_mut;
  ObjectiveValue f_n = best_mut_f;
  for (std::uint64_t j = 0; j < lam; ++j) {
    BitString child = crossover(ctx.rng(), x_c, best_mut, c);
    if (child == x_c || child == best_mut) continue;
    if (ctx.finished()) return;
    const ObjectiveValue f = ctx.evaluate(child);
    if (f < f_n) {
      x_n = std::move(child);
      f_n = f;
    }
  }

  if (f_n < f_c)
    lambda = std::max(1.0, lambda / kLambdaShrink);
  else
    lambda = std::min(static_cast<double>(s), lambda * kLambdaGrow);
  if (f_n <= f_c) {
    x_c = std::move(x_n);
    f_c = f_n;
  }
}

// Frequency-mode counterpart, shared by Safga and the ffa mode of Safgap.
void safga_iteration(RunContext& ctx, BitString& x_c, ObjectiveValue& f_c,
                     double& lambda, FrequencyTable& table, std::uint64_t lam,
                     std::uint64_t mutant_count) {
  const std::size_t s = ctx.problem().scale();
  const double p = lambda / static_cast<double>(s);
  const double c = 1.0 / lambda;
  const std::uint64_t flips = binomial_gt0(ctx.rng(), s, p);

  // Mutant selection reads the counters as the previous iteration left
  // them; nothing is counted before the selection phase below.
  BitString best_mut;
  ObjectiveValue best_mut_f = 0;
  std::uint64_t best_mut_fit = 0;
  bool have_mut = false;
  for (std::uint64_t i = 0; i < mutant_count; ++i) {
    if (ctx.finished()) return;
    BitString mutant = mutate_exact(ctx.rng(), x_c, flips);
    const ObjectiveValue f = ctx.evaluate(mutant);
    const std::uint64_t fit = table.fitness(f);
    if (!have_mut || fit < best_mut_fit) {
      best_mut = std::move(mutant);
      best_mut_f = f;
      best_mut_fit = fit;
      have_mut = true;
    }
  }
  if (ctx.finished()) return;

  std::vector<std::pair<BitString, ObjectiveValue>> children;
  for (std::uint64_t j = 0; j < lam; ++j) {
    BitString child = crossover(ctx.rng(), x_c, best_mut, c);
    if (child == x_c || child == best_mut) continue;
    if (ctx.finished()) return;
    const ObjectiveValue f = ctx.evaluate(child);
    children.emplace_back(std::move(child), f);
  }

  // Selection phase: every participant is counted once, then all
  // comparisons use the updated counters.
  table.increment(f_c);
  table.increment(best_mut_f);
  for (const auto& [child, f] : children) table.increment(f);

  BitString* x_n = &best_mut;
  ObjectiveValue f_n = best_mut_f;
  std::uint64_t fit_n = table.fitness(best_mut_f);
  for (auto& [child, f] : children) {
    const std::uint64_t fit = table.fitness(f);
    if (fit < fit_n) {
      x_n = &child;
      f_n = f;
      fit_n = fit;
    }
  }

  if (fit_n < table.fitness(f_c))
    lambda = std::max(1.0, lambda / kLambdaShrink);
  else
    lambda = std::min(static_cast<double>(s), lambda * kLambdaGrow);
  if (fit_n <= table.fitness(f_c)) {
    x_c = std::move(*x_n);
    f_c = f_n;
  }
}

}  // namespace

// ---- (1+1) EA -------------------------------------------------------------

void OnePlusOneEa::init(RunContext& ctx) {
  x_c_ = BitString::random(ctx.rng(), ctx.problem().scale());
  f_c_ = ctx.evaluate(x_c_);
}

void OnePlusOneEa::step(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  const std::uint64_t flips = binomial_gt0(ctx.rng(), s, 1.0 / s);
  BitString x_n = mutate_exact(ctx.rng(), x_c_, flips);
  const ObjectiveValue f_n = ctx.evaluate(x_n);
  if (f_n <= f_c_) {
    x_c_ = std::move(x_n);
    f_c_ = f_n;
  }
}

// ---- (1+1) FEA ------------------------------------------------------------

void OnePlusOneFea::init(RunContext& ctx) {
  table_.emplace(ctx.problem().upper_bound());
  x_c_ = BitString::random(ctx.rng(), ctx.problem().scale());
  f_c_ = ctx.evaluate(x_c_);
}

void OnePlusOneFea::step(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  const std::uint64_t flips = binomial_gt0(ctx.rng(), s, 1.0 / s);
  BitString x_n = mutate_exact(ctx.rng(), x_c_, flips);
  const ObjectiveValue f_n = ctx.evaluate(x_n);
  table_->increment(f_c_);
  table_->increment(f_n);
  if (table_->fitness(f_n) <= table_->fitness(f_c_)) {
    x_c_ = std::move(x_n);
    f_c_ = f_n;
  }
}

// ---- two-individual GA ------------------------------------------------------

namespace {
double default_gga_numerator() { return (1.0 + std::sqrt(5.0)) / 2.0; }
}  // namespace

Gga::Gga(std::optional<double> mutation_numerator)
    : numerator_(mutation_numerator.value_or(default_gga_numerator())) {
  if (numerator_ <= 0.0)
    throw std::invalid_argument("Gga: mutation numerator must be positive");
}

void Gga::init(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  x_c_ = BitString::random(ctx.rng(), s);
  f_c_ = ctx.evaluate(x_c_);
  if (ctx.finished()) return;
  x_d_ = BitString::random(ctx.rng(), s);
  f_d_ = ctx.evaluate(x_d_);
  if (f_d_ < f_c_) {
    std::swap(x_c_, x_d_);
    std::swap(f_c_, f_d_);
  }
}

void Gga::step(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  const double p = numerator_ / static_cast<double>(s);

  // Crossover only when both parents sit on the same objective value and
  // are distinct strings; otherwise the better parent goes forward alone.
  BitString x_e;
  if (f_c_ == f_d_ && x_c_ != x_d_)
    x_e = crossover(ctx.rng(), x_c_, x_d_, 0.5);
  else
    x_e = x_c_;

  BitString x_n;
  if (x_e == x_c_ || x_e == x_d_) {
    const std::uint64_t flips = binomial_gt0(ctx.rng(), s, p);
    x_n = mutate_exact(ctx.rng(), x_e, flips);
  } else {
    const std::uint64_t flips = binomial(ctx.rng(), s, p);
    x_n = flips == 0 ? std::move(x_e) : mutate_exact(ctx.rng(), x_e, flips);
  }

  const ObjectiveValue f_n = ctx.evaluate(x_n);
  if (f_n <= f_d_) {
    if (f_d_ > f_c_) {
      x_d_ = std::move(x_n);
      f_d_ = f_n;
    } else if (ctx.rng().next_below(2) == 0) {  // equal parents: either one
      x_c_ = std::move(x_n);
      f_c_ = f_n;
    } else {
      x_d_ = std::move(x_n);
      f_d_ = f_n;
    }
    if (f_d_ < f_c_) {
      std::swap(x_c_, x_d_);
      std::swap(f_c_, f_d_);
    }
  }
}

// ---- two-individual GA under frequency fitness -----------------------------

Gfga::Gfga(std::optional<double> mutation_numerator, bool gate_on_objective)
    : numerator_(mutation_numerator.value_or(default_gga_numerator())),
      gate_on_objective_(gate_on_objective) {
  if (numerator_ <= 0.0)
    throw std::invalid_argument("Gfga: mutation numerator must be positive");
}

void Gfga::init(RunContext& ctx) {
  table_.emplace(ctx.problem().upper_bound());
  const std::size_t s = ctx.problem().scale();
  x_c_ = BitString::random(ctx.rng(), s);
  f_c_ = ctx.evaluate(x_c_);
  if (ctx.finished()) return;
  x_d_ = BitString::random(ctx.rng(), s);
  f_d_ = ctx.evaluate(x_d_);
  // Both counters are zero here; the parent order stays as drawn.
}

void Gfga::step(RunContext& ctx) {
  FrequencyTable& h = *table_;
  const std::size_t s = ctx.problem().scale();
  const double p = numerator_ / static_cast<double>(s);

  const bool gate = gate_on_objective_
                        ? f_c_ == f_d_
                        : h.fitness(f_c_) == h.fitness(f_d_);
  BitString x_e;
  if (gate && x_c_ != x_d_)
    x_e = crossover(ctx.rng(), x_c_, x_d_, 0.5);
  else
    x_e = x_c_;

  BitString x_n;
  if (x_e == x_c_ || x_e == x_d_) {
    const std::uint64_t flips = binomial_gt0(ctx.rng(), s, p);
    x_n = mutate_exact(ctx.rng(), x_e, flips);
  } else {
    const std::uint64_t flips = binomial(ctx.rng(), s, p);
    x_n = flips == 0 ? std::move(x_e) : mutate_exact(ctx.rng(), x_e, flips);
  }

  const ObjectiveValue f_n = ctx.evaluate(x_n);

  // Selection phase: count the three members, then keep the parent pair
  // ordered by the updated counters before comparing against the child.
  h.increment(f_c_);
  h.increment(f_d_);
  h.increment(f_n);
  if (h.fitness(f_d_) < h.fitness(f_c_)) {
    std::swap(x_c_, x_d_);
    std::swap(f_c_, f_d_);
  }
  if (h.fitness(f_n) <= h.fitness(f_d_)) {
    if (h.fitness(f_d_) > h.fitness(f_c_)) {
      x_d_ = std::move(x_n);
      f_d_ = f_n;
    } else if (ctx.rng().next_below(2) == 0) {
      x_c_ = std::move(x_n);
      f_c_ = f_n;
    } else {
      x_d_ = std::move(x_n);
      f_d_ = f_n;
    }
    if (h.fitness(f_d_) < h.fitness(f_c_)) {
      std::swap(x_c_, x_d_);
      std::swap(f_c_, f_d_);
    }
  }
}

// ---- self-adjusting (1+(lambda,lambda)) GA ---------------------------------

void Saga::init(RunContext& ctx) {
  lambda_ = 1.0;
  x_c_ = BitString::random(ctx.rng(), ctx.problem().scale());
  f_c_ = ctx.evaluate(x_c_);
}

void Saga::step(RunContext& ctx) {
  const std::uint64_t lam = offspring_count(lambda_, ctx.problem().scale());
  saga_iteration(ctx, x_c_, f_c_, lambda_, lam, lam);
}

void Safga::init(RunContext& ctx) {
  table_.emplace(ctx.problem().upper_bound());
  lambda_ = 1.0;
  x_c_ = BitString::random(ctx.rng(), ctx.problem().scale());
  f_c_ = ctx.evaluate(x_c_);
}

void Safga::step(RunContext& ctx) {
  const std::uint64_t lam = offspring_count(lambda_, ctx.problem().scale());
  safga_iteration(ctx, x_c_, f_c_, lambda_, *table_, lam, lam);
}

// ---- alternating hybrid -----------------------------------------------------

Eafea::Eafea(bool overwrite_strict) : overwrite_strict_(overwrite_strict) {}

void Eafea::init(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  ea_x_ = BitString::random(ctx.rng(), s);
  ea_f_ = ctx.evaluate(ea_x_);
  ea_fes_ = 1;
  if (ctx.finished()) return;
  table_.emplace(ctx.problem().upper_bound());
  fea_x_ = BitString::random(ctx.rng(), s);
  fea_f_ = ctx.evaluate(fea_x_);
  fea_fes_ = 1;
}

void Eafea::step(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  {  // direct sub-step
    const std::uint64_t flips = binomial_gt0(ctx.rng(), s, 1.0 / s);
    BitString x_n = mutate_exact(ctx.rng(), ea_x_, flips);
    const ObjectiveValue f_n = ctx.evaluate(x_n);
    ++ea_fes_;
    if (f_n <= ea_f_) {
      ea_x_ = std::move(x_n);
      ea_f_ = f_n;
    }
  }
  if (ctx.finished()) return;
  {  // frequency sub-step
    const std::uint64_t flips = binomial_gt0(ctx.rng(), s, 1.0 / s);
    BitString x_n = mutate_exact(ctx.rng(), fea_x_, flips);
    const ObjectiveValue f_n = ctx.evaluate(x_n);
    ++fea_fes_;
    table_->increment(fea_f_);
    table_->increment(f_n);
    if (table_->fitness(f_n) <= table_->fitness(fea_f_)) {
      fea_x_ = x_n;
      fea_f_ = f_n;
    }
    // The frequency side informs the direct side whenever its fresh
    // solution is good enough.
    const bool overwrite = overwrite_strict_ ? f_n == ea_f_ : f_n <= ea_f_;
    if (overwrite) {
      ea_x_ = std::move(x_n);
      ea_f_ = f_n;
    }
  }
}

// ---- mode-switching hybrid --------------------------------------------------

void Safgap::init(RunContext& ctx) {
  table_.emplace(ctx.problem().upper_bound());
  lambda_ = 1.0;
  mode_ = Mode::pure;
  x_c_ = BitString::random(ctx.rng(), ctx.problem().scale());
  f_c_ = ctx.evaluate(x_c_);
}

void Safgap::step(RunContext& ctx) {
  const std::size_t s = ctx.problem().scale();
  const std::uint64_t lam = offspring_count(lambda_, s);
  const bool at_full_scale = lam == s;
  // At round(lambda) = s every mutant is the full complement; make one.
  const std::uint64_t mutants = at_full_scale ? 1 : lam;

  if (mode_ == Mode::pure) {
    saga_iteration(ctx, x_c_, f_c_, lambda_, lam, mutants);
    if (ctx.finished()) return;
    // Switch at the end of the first full iteration run at lambda = s.
    if (at_full_scale) mode_ = Mode::ffa;
  } else {
    const ObjectiveValue best_before = ctx.best_objective();
    safga_iteration(ctx, x_c_, f_c_, lambda_, *table_, lam, mutants);
    if (ctx.finished()) return;
    if (ctx.best_objective() < best_before) mode_ = Mode::pure;
  }
}

// ---- registry and run loop --------------------------------------------------

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "ea", "fea", "gga", "gfga", "saga", "safga", "eafea", "safgap"};
  return names;
}

std::string to_string(AlgorithmId id) {
  return algorithm_names()[static_cast<std::size_t>(id)];
}

AlgorithmId parse_algorithm(const std::string& name) {
  const auto& names = algorithm_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<AlgorithmId>(i);
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::unique_ptr<Algorithm> make_algorithm(AlgorithmId id,
                                          const AlgorithmParams& params) {
  switch (id) {
    case AlgorithmId::ea:
      return std::make_unique<OnePlusOneEa>();
    case AlgorithmId::fea:
      return std::make_unique<OnePlusOneFea>();
    case AlgorithmId::gga:
      return std::make_unique<Gga>(params.gga_mutation_numerator);
    case AlgorithmId::gfga:
      return std::make_unique<Gfga>(params.gga_mutation_numerator,
                                    params.gfga_gate_on_objective);
    case AlgorithmId::saga:
      return std::make_unique<Saga>();
    case AlgorithmId::safga:
      return std::make_unique<Safga>();
    case AlgorithmId::eafea:
      return std::make_unique<Eafea>(params.eafea_overwrite_strict);
    case AlgorithmId::safgap:
      return std::make_unique<Safgap>();
  }
  throw std::invalid_argument("make_algorithm: unknown id");
}

RunResult run(Algorithm& algorithm, const Problem& problem, std::uint64_t seed,
              const RunOptions& options) {
  RunContext ctx(problem, seed, options);
  algorithm.init(ctx);
  while (!ctx.finished()) algorithm.step(ctx);
  return {ctx.used_fes(), ctx.best_objective(), ctx.best_objective() == 0};
}

RunResult run(AlgorithmId id, const Problem& problem, std::uint64_t seed,
              std::uint64_t budget, const AlgorithmParams& params) {
  const auto algorithm = make_algorithm(id, params);
  return run(*algorithm, problem, seed, RunOptions{budget, true, nullptr});
}

}  // namespace ffbench
