#include "pursuit/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pursuit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Rng::mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix64(mix64(base) ^ (stream + kGolden));
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  // splitmix64 walk fills the xoshiro state; an all-zero state is impossible
  std::uint64_t sm = seed;
  for (auto& s : s_) {
    sm += kGolden;
    std::uint64_t z = sm;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    s = z ^ (z >> 31);
  }
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_int: bound must be positive");
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return static_cast<int>(r % b);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::normal(double mean, double stddev) { return mean + stddev * normal(); }

}  // namespace pursuit
