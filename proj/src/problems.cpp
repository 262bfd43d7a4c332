#include "ffbench/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffbench {

ObjectiveValue onemax_value(const BitString& x) {
  return x.size() - x.count_ones();
}

ObjectiveValue leadingones_value(const BitString& x) {
  std::size_t prefix = 0;
  while (prefix < x.size() && x[prefix] == 1) ++prefix;
  return x.size() - prefix;
}

ObjectiveValue twomax_value(const BitString& x) {
  const std::size_t s = x.size();
  const std::size_t ones = x.count_ones();
  if (ones == s) return 0;
  return 1 + s - std::max(ones, s - ones);
}

ObjectiveValue trap_value(const BitString& x) {
  const std::size_t ones = x.count_ones();
  if (ones == 0) return 0;
  return x.size() - ones + 1;
}

static void check_width(std::uint64_t width, std::size_t scale,
                        const char* what) {
  if (width <= 1 || width >= scale)
    throw std::invalid_argument(std::string(what) +
                                ": width must lie strictly in (1, s)");
}

ObjectiveValue jump_value(const BitString& x, std::uint64_t width) {
  const std::size_t s = x.size();
  check_width(width, s, "jump");
  const std::size_t ones = x.count_ones();
  if (ones == s || ones <= s - width) return s - ones;
  return width + ones;
}

ObjectiveValue plateau_value(const BitString& x, std::uint64_t width) {
  const std::size_t s = x.size();
  check_width(width, s, "plateau");
  const std::size_t ones = x.count_ones();
  if (ones == s || ones <= s - width) return s - ones;
  return width;
}

// n - Q + n * sum over lines of max(0, Q_line - 1), where the lines are the
// n rows, n columns and all 2(2n-1) diagonals of both directions. Length-1
// corner diagonals are included; they can never contribute.
ObjectiveValue nqueens_value(const BitString& x, std::size_t n) {
  if (n < 4 || x.size() != n * n)
    throw std::invalid_argument("nqueens: need s = n^2 with n >= 4");
  std::vector<std::uint32_t> rows(n, 0), cols(n, 0);
  std::vector<std::uint32_t> diag(2 * n - 1, 0), anti(2 * n - 1, 0);
  std::uint64_t queens = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!x[r * n + c]) continue;
      ++queens;
      ++rows[r];
      ++cols[c];
      ++diag[r + n - 1 - c];
      ++anti[r + c];
    }
  }
  std::uint64_t penalty = 0;
  for (const auto q : rows) penalty += q > 1 ? q - 1 : 0;
  for (const auto q : cols) penalty += q > 1 ? q - 1 : 0;
  for (const auto q : diag) penalty += q > 1 ? q - 1 : 0;
  for (const auto q : anti) penalty += q > 1 ? q - 1 : 0;
  // n - Q can be negative while the penalty term compensates; compute signed.
  const std::int64_t value = static_cast<std::int64_t>(n) -
                             static_cast<std::int64_t>(queens) +
                             static_cast<std::int64_t>(n * penalty);
  return static_cast<ObjectiveValue>(value);
}

ObjectiveValue ising_value(const BitString& x, const EdgeSet& edges) {
  const std::size_t s = x.size();
  ObjectiveValue disagreements = 0;
  for (const auto& [i, j] : edges.edges) {
    if (i >= s || j >= s)
      throw std::invalid_argument("ising: edge index out of range");
    disagreements += x[i] != x[j] ? 1 : 0;
  }
  return disagreements;
}

ObjectiveValue linear_harmonic_value(const BitString& x) {
  const std::uint64_t s = x.size();
  std::uint64_t weighted = 0;
  for (std::uint64_t i = 0; i < s; ++i)
    if (x[i]) weighted += i + 1;
  return s * (s + 1) / 2 - weighted;
}

EdgeSet ring_edges(std::size_t scale) {
  if (scale < 3) throw std::invalid_argument("ring_edges: need s >= 3");
  EdgeSet e;
  e.edges.reserve(scale);
  for (std::size_t i = 0; i < scale; ++i)
    e.edges.emplace_back(static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>((i + 1) % scale));
  return e;
}

EdgeSet torus_edges(std::size_t side) {
  if (side < 2) throw std::invalid_argument("torus_edges: need N >= 2");
  EdgeSet e;
  e.edges.reserve(2 * side * side);
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      const auto cell = static_cast<std::uint32_t>(row * side + col);
      e.edges.emplace_back(
          cell, static_cast<std::uint32_t>(row * side + (col + 1) % side));
      e.edges.emplace_back(
          cell, static_cast<std::uint32_t>(((row + 1) % side) * side + col));
    }
  }
  return e;
}

namespace {

class OneMaxProblem final : public Problem {
 public:
  explicit OneMaxProblem(std::size_t s)
      : Problem("onemax", "s=" + std::to_string(s), s, s) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return onemax_value(x);
  }
};

class LeadingOnesProblem final : public Problem {
 public:
  explicit LeadingOnesProblem(std::size_t s)
      : Problem("leadingones", "s=" + std::to_string(s), s, s) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return leadingones_value(x);
  }
};

class TwoMaxProblem final : public Problem {
 public:
  explicit TwoMaxProblem(std::size_t s)
      : Problem("twomax", "s=" + std::to_string(s), s, s) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return twomax_value(x);
  }
};

class TrapProblem final : public Problem {
 public:
  explicit TrapProblem(std::size_t s)
      : Problem("trap", "s=" + std::to_string(s), s, s) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return trap_value(x);
  }
};

class JumpProblem final : public Problem {
 public:
  JumpProblem(std::size_t s, std::uint64_t width)
      : Problem("jump", "s=" + std::to_string(s) + ",w=" + std::to_string(width),
                s, s + width - 1),
        width_(width) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return jump_value(x, width_);
  }

 private:
  std::uint64_t width_;
};

class PlateauProblem final : public Problem {
 public:
  PlateauProblem(std::size_t s, std::uint64_t width)
      : Problem("plateau",
                "s=" + std::to_string(s) + ",w=" + std::to_string(width), s, s),
        width_(width) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return plateau_value(x, width_);
  }

 private:
  std::uint64_t width_;
};

class NQueensProblem final : public Problem {
 public:
  NQueensProblem(std::size_t s, std::size_t n)
      : Problem("nqueens", "s=" + std::to_string(s) + ",n=" + std::to_string(n),
                s, all_ones_value(s, n)),
        n_(n) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return nqueens_value(x, n_);
  }

 private:
  // The full board maximizes every penalty term; evaluated once as UB.
  static ObjectiveValue all_ones_value(std::size_t s, std::size_t n) {
    BitString full(s);
    for (std::size_t i = 0; i < s; ++i) full.set(i, true);
    return nqueens_value(full, n);
  }
  std::size_t n_;
};

class IsingProblem final : public Problem {
 public:
  IsingProblem(std::string name, std::string instance, std::size_t s,
               EdgeSet edges)
      : Problem(std::move(name), std::move(instance), s, edges.edges.size()),
        edges_(std::move(edges)) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return ising_value(x, edges_);
  }

 private:
  EdgeSet edges_;
};

class LinearHarmonicProblem final : public Problem {
 public:
  explicit LinearHarmonicProblem(std::size_t s)
      : Problem("linharm", "s=" + std::to_string(s), s,
                static_cast<ObjectiveValue>(s) * (s + 1) / 2) {}
  ObjectiveValue evaluate(const BitString& x) const override {
    return linear_harmonic_value(x);
  }
};

std::size_t exact_sqrt(std::size_t s, const char* what) {
  const auto root = static_cast<std::size_t>(std::lround(std::sqrt(
      static_cast<double>(s))));
  if (root * root != s)
    throw std::invalid_argument(std::string(what) +
                                ": scale must be a perfect square");
  return root;
}

}  // namespace

const std::vector<ProblemInfo>& problem_registry() {
  static const std::vector<ProblemInfo> registry = {
      {"onemax", ""},
      {"leadingones", ""},
      {"twomax", ""},
      {"trap", ""},
      {"jump", "omega in (1,s)"},
      {"plateau", "omega in (1,s)"},
      {"nqueens", "s = n^2, n >= 4"},
      {"ising1d", "s >= 3"},
      {"ising2d", "s = N^2, N >= 2"},
      {"linharm", ""},
  };
  return registry;
}

std::unique_ptr<Problem> make_problem(const std::string& name,
                                      std::size_t scale,
                                      const ProblemParams& params) {
  if (scale == 0) throw std::invalid_argument("make_problem: scale must be >= 1");
  if (name == "onemax") return std::make_unique<OneMaxProblem>(scale);
  if (name == "leadingones") return std::make_unique<LeadingOnesProblem>(scale);
  if (name == "twomax") return std::make_unique<TwoMaxProblem>(scale);
  if (name == "trap") return std::make_unique<TrapProblem>(scale);
  if (name == "jump" || name == "plateau") {
    if (!params.omega)
      throw std::invalid_argument("make_problem: " + name + " needs omega");
    check_width(*params.omega, scale, name.c_str());
    if (name == "jump")
      return std::make_unique<JumpProblem>(scale, *params.omega);
    return std::make_unique<PlateauProblem>(scale, *params.omega);
  }
  if (name == "nqueens") {
    const std::size_t n =
        params.queens_n ? *params.queens_n : exact_sqrt(scale, "nqueens");
    if (n * n != scale)
      throw std::invalid_argument("make_problem: nqueens needs s = n^2");
    if (n < 4) throw std::invalid_argument("make_problem: nqueens needs n >= 4");
    return std::make_unique<NQueensProblem>(scale, n);
  }
  if (name == "ising1d") {
    return std::make_unique<IsingProblem>(
        "ising1d", "s=" + std::to_string(scale), scale, ring_edges(scale));
  }
  if (name == "ising2d") {
    const std::size_t side =
        params.torus_side ? *params.torus_side : exact_sqrt(scale, "ising2d");
    if (side * side != scale)
      throw std::invalid_argument("make_problem: ising2d needs s = N^2");
    return std::make_unique<IsingProblem>(
        "ising2d",
        "s=" + std::to_string(scale) + ",N=" + std::to_string(side), scale,
        torus_edges(side));
  }
  if (name == "linharm") return std::make_unique<LinearHarmonicProblem>(scale);
  throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

const std::vector<std::string>& width_spec_names() {
  static const std::vector<std::string> names = {"lnS", "lnS1", "sqrtS",
                                                 "sqrtS1", "halfS1"};
  return names;
}

std::uint64_t resolve_width_spec(const std::string& spec, std::size_t scale) {
  const auto sd = static_cast<double>(scale);
  if (spec == "lnS") return static_cast<std::uint64_t>(std::floor(std::log(sd)));
  if (spec == "lnS1")
    return static_cast<std::uint64_t>(std::floor(std::log(sd))) + 1;
  if (spec == "sqrtS")
    return static_cast<std::uint64_t>(std::floor(std::sqrt(sd)));
  if (spec == "sqrtS1")
    return static_cast<std::uint64_t>(std::floor(std::sqrt(sd))) + 1;
  if (spec == "halfS1") {
    const auto half = static_cast<std::uint64_t>(scale / 2);
    if (half == 0) throw std::invalid_argument("halfS1: scale too small");
    return half - 1;
  }
  // Otherwise an explicit integer width.
  std::size_t pos = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(spec, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("unknown width spec '" + spec + "'");
  }
  if (pos != spec.size())
    throw std::invalid_argument("unknown width spec '" + spec + "'");
  return value;
}

}  // namespace ffbench
