#pragma once

#include <cstdint>

namespace pursuit {

// Deterministic 64-bit generator: xoshiro256++ 1.0, seeded through splitmix64.
//
// Reproducibility contract:
//  - Rng(seed) always produces the same sequence for the same seed.
//  - derive_seed(base, stream) gives hash-separated seeds for parallel or
//    logically independent streams (matrix generation vs. trial signals vs.
//    probe vectors), so adding draws to one stream never shifts another.
//  - normal() uses the polar (Marsaglia) form of the Box-Muller transform,
//    implemented here rather than taken from the platform library, so the
//    sequence depends only on this file and the libm log/sqrt.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // uniform on [0,1), 53-bit resolution
  double uniform();
  // uniform on {0, 1, ..., bound-1}, rejection-sampled to avoid modulo bias
  int uniform_int(int bound);
  // standard normal; pairs are generated and the spare is cached
  double normal();
  double normal(double mean, double stddev);

  std::uint64_t seed() const { return seed_; }
  Rng substream(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  // splitmix64 output function as a stateless 64-bit mixer
  static std::uint64_t mix64(std::uint64_t x);
  // child seed for the given stream index: mix64(mix64(base) ^ (stream + golden ratio))
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pursuit
