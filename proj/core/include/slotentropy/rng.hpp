#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace slotentropy::rng {

// splitmix64 (Steele, Lea, Flood 2014). All sampling in this project goes
// through it rather than <random> distributions so that seeded results are
// byte-identical across standard libraries and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n);

  // [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix(std::uint64_t x);
std::uint64_t hash_str(std::string_view s, std::uint64_t h = 1469598103934665603ULL);

// Independent, order-insensitive substreams of a master seed.
std::uint64_t derive_stream(std::uint64_t master, std::string_view label);
std::uint64_t derive_stream(std::uint64_t master, std::string_view label, std::uint64_t index);

// Standard normal via Box-Muller (test/simulation use only).
double normal(SplitMix64& g);

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(g.bounded(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace slotentropy::rng
