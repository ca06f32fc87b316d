// Deterministic random streams.
//
// Every stochastic routine draws from a RandomStream it receives explicitly;
// nothing reads the wall clock or a global engine.  Replica- and task-level
// parallelism derives one stream per task from (seed, stream_id), so results
// are independent of the thread count and byte-identical across reruns.
#pragma once

#include <cstdint>
#include <random>

namespace gld {

// splitmix64 step; used only to spread (seed, stream_id) pairs over the
// mt19937_64 seed space so neighbouring ids yield uncorrelated streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : engine_(mix64(mix64(seed) ^ mix64(stream_id + 0x51a2b3c4d5e6f708ULL))) {}

  // One standard normal variate.  Consumption order is the call order; the
  // Euler-Maruyama step relies on drawing exactly n of these per step.
  double normal() { return normal_(engine_); }

  // Uniform on [0, 1).
  double uniform() { return unif_(engine_); }

  // Uniform integer in {0, ..., bound-1}.
  std::uint64_t uniform_index(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace gld
