#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace coassim {

// Stable labeled sub-seed derivation: FNV-1a over the label bytes, mixed
// with the master seed. Keeps scenario components on independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (unsigned char c : label) mix(c);
  for (int i = 0; i < 8; ++i) mix((master >> (8 * i)) & 0xff);
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::string_view label) {
  return std::mt19937_64(derive_seed(master, label));
}

inline double draw_normal(std::mt19937_64& rng, double mean = 0.0,
                          double sd = 1.0) {
  std::normal_distribution<double> d(mean, sd);
  return d(rng);
}

}  // namespace coassim
