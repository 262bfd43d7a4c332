#pragma once

#include <cstdint>

#include "ffbench/bitstring.hpp"
#include "ffbench/rng.hpp"

namespace ffbench {

// The three variation operators every search algorithm here is built from,
// plus the binomial samplers that drive them. All of them draw from the
// passed Rng in a fixed order, so runs replay exactly from a seed.

// Bin(trials, p): number of successes in `trials` independent Bernoulli(p)
// draws. Exact by construction; consumes one draw per trial.
std::uint64_t binomial(Rng& rng, std::uint64_t trials, double p);

// Bin(trials, p) conditioned on a positive outcome: resamples until > 0.
std::uint64_t binomial_gt0(Rng& rng, std::uint64_t trials, double p);

// Copy of x with exactly `flips` distinct positions flipped, the index set
// uniform over all C(s, flips) subsets (partial Fisher-Yates).
BitString mutate_exact(Rng& rng, const BitString& x, std::uint64_t flips);

// Uniform-per-position crossover: each output bit comes from `donor` with
// probability take_prob, otherwise from `base`.
BitString crossover(Rng& rng, const BitString& base, const BitString& donor,
                    double take_prob);

}  // namespace ffbench
