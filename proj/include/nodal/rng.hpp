#pragma once

#include <cstdint>
#include <stdexcept>

namespace nodal {

// Deterministic 64-bit generator (splitmix64).  Produces the same stream on
// every platform for a given seed, so sampled configurations and probe
// randomizations are reproducible from (seed, field) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, m); rejection sampling keeps the distribution exact
  std::uint64_t below(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("Rng::below: empty range");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % m;
  }

  // uniform integer in [lo, hi]
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::in_range: empty range");
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // derive an independent stream seed (used for per-trial sub-streams)
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace nodal
