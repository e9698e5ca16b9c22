#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace medslot {

// Deterministic RNG with hand-rolled distributions. std::uniform_*_distribution
// output is implementation-defined, so every draw here goes through fixed
// bit-level formulas to keep runs reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit mantissa.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent stream for a named purpose (init, dropout, shuffle).
  // Forking depends only on the construction seed, never on draws made so far.
  Rng fork(std::uint64_t stream_id) const {
    return Rng(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1))));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace medslot
