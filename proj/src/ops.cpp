#include "ffbench/ops.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace ffbench {

std::uint64_t binomial(Rng& rng, std::uint64_t trials, double p) {
  if (trials == 0) throw std::invalid_argument("binomial: trials must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial: p must lie in [0,1]");
  std::uint64_t successes = 0;
  for (std::uint64_t i = 0; i < trials; ++i)
    successes += rng.next_bernoulli(p) ? 1 : 0;
  return successes;
}

std::uint64_t binomial_gt0(Rng& rng, std::uint64_t trials, double p) {
  if (trials == 0)
    throw std::invalid_argument("binomial_gt0: trials must be >= 1");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial_gt0: p must lie in (0,1]");
  for (;;) {
    const std::uint64_t value = binomial(rng, trials, p);
    if (value > 0) return value;
  }
}

BitString mutate_exact(Rng& rng, const BitString& x, std::uint64_t flips) {
  const std::uint64_t s = x.size();
  if (flips == 0 || flips > s)
    throw std::invalid_argument("mutate_exact: flips must lie in [1, s]");
  std::vector<std::uint32_t> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  BitString out = x;
  for (std::uint64_t i = 0; i < flips; ++i) {
    const std::uint64_t j = i + rng.next_below(s - i);
    std::swap(idx[i], idx[j]);
    out.flip(idx[i]);
  }
  return out;
}

BitString crossover(Rng& rng, const BitString& base, const BitString& donor,
                    double take_prob) {
  if (base.size() != donor.size())
    throw std::invalid_argument("crossover: length mismatch");
  if (!(take_prob >= 0.0 && take_prob <= 1.0))
    throw std::invalid_argument("crossover: take_prob must lie in [0,1]");
  BitString out = base;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.next_bernoulli(take_prob)) out.set(i, donor[i] != 0);
  return out;
}

}  // namespace ffbench
