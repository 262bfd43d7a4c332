#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffbench/bitstring.hpp"
#include "ffbench/types.hpp"

namespace ffbench {

// A benchmark objective under minimization: value range [0, UB], value 0
// identifies a global optimum. Instances are immutable after construction
// and safe to share between concurrent runs.
class Problem {
 public:
  Problem(std::string name, std::string instance, std::size_t scale,
          ObjectiveValue upper_bound)
      : name_(std::move(name)),
        instance_(std::move(instance)),
        scale_(scale),
        upper_bound_(upper_bound) {}
  virtual ~Problem() = default;

  const std::string& name() const { return name_; }
  // Parameter label for reports, e.g. "s=32,w=6".
  const std::string& instance() const { return instance_; }
  std::size_t scale() const { return scale_; }
  ObjectiveValue upper_bound() const { return upper_bound_; }

  virtual ObjectiveValue evaluate(const BitString& x) const = 0;

 private:
  std::string name_;
  std::string instance_;
  std::size_t scale_;
  ObjectiveValue upper_bound_;
};

// Directed penalty edges for the spin-alignment objectives; 0-based indices.
struct EdgeSet {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Raw objective functions. Bit i in the formulas below is 1-based; the
// BitString argument stores it at position i-1.
ObjectiveValue onemax_value(const BitString& x);
ObjectiveValue leadingones_value(const BitString& x);
ObjectiveValue twomax_value(const BitString& x);
ObjectiveValue trap_value(const BitString& x);
ObjectiveValue jump_value(const BitString& x, std::uint64_t width);
ObjectiveValue plateau_value(const BitString& x, std::uint64_t width);
ObjectiveValue nqueens_value(const BitString& x, std::size_t n);
ObjectiveValue ising_value(const BitString& x, const EdgeSet& edges);
ObjectiveValue linear_harmonic_value(const BitString& x);

// Ring: every index connected to its successor mod s; |E| = s.
EdgeSet ring_edges(std::size_t scale);
// Torus of side N (s = N^2), row-major cells: every cell paired with its
// right and down neighbour, wrapping. Ordered pairs; for N = 2 both (a,b)
// and (b,a) occur, and that doubling is kept. |E| = 2 N^2.
EdgeSet torus_edges(std::size_t side);

struct ProblemParams {
  std::optional<std::uint64_t> omega;     // jump/plateau width
  std::optional<std::size_t> queens_n;    // board side, s = n^2
  std::optional<std::size_t> torus_side;  // torus side N, s = N^2
};

// Registered problem names, the exact strings the CLI accepts.
struct ProblemInfo {
  std::string name;
  std::string params;  // human-readable parameter requirements
};
const std::vector<ProblemInfo>& problem_registry();

std::unique_ptr<Problem> make_problem(const std::string& name,
                                      std::size_t scale,
                                      const ProblemParams& params = {});

// The five standard jump/plateau widths swept by the harness, resolvable
// by name: lnS, lnS1, sqrtS, sqrtS1, halfS1.
std::uint64_t resolve_width_spec(const std::string& spec, std::size_t scale);
const std::vector<std::string>& width_spec_names();

}  // namespace ffbench
