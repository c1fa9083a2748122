#pragma once

#include <cmath>
#include <cstdint>

// Counter-based deterministic RNG helpers. Values depend only on the key
// material, never on call order, so parallel sweeps and re-runs reproduce
// bit-identical streams.

namespace lpw {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ull));
}

inline double uniform01(std::uint64_t key) {
  // 53-bit mantissa in (0, 1]; avoids exact zero for log() use below
  return ((splitmix64(key) >> 11) + 1.0) * 0x1.0p-53;
}

// standard normal via Box-Muller on two decorrelated subkeys
inline double gaussian(std::uint64_t key) {
  double u1 = uniform01(mix_keys(key, 0x9e3779b97f4a7c15ull));
  double u2 = uniform01(mix_keys(key, 0x7f4a7c159e3779b9ull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline int rademacher(std::uint64_t key) {
  return (splitmix64(key) & 1ull) ? 1 : -1;
}

} // namespace lpw
