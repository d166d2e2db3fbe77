#include "slotentropy/rng.hpp"

#include <cmath>

namespace slotentropy::rng {

std::uint64_t SplitMix64::bounded(std::uint64_t n) {
  if (n <= 1) return 0;
  // reject the tail that would bias the modulus
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::uint64_t mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_str(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;  // FNV-1a
  }
  return h;
}

std::uint64_t derive_stream(std::uint64_t master, std::string_view label) {
  return mix(master ^ hash_str(label));
}

std::uint64_t derive_stream(std::uint64_t master, std::string_view label, std::uint64_t index) {
  return mix(derive_stream(master, label) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

double normal(SplitMix64& g) {
  double u1 = g.uniform01();
  while (u1 <= 0.0) u1 = g.uniform01();
  const double u2 = g.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace slotentropy::rng
