#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fdrl {

using Rng = std::mt19937_64;

// Uniform in [0, 1) from the top 53 bits. Unlike std::uniform_real_distribution
// this is bit-identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unit-mean exponential by inversion.
inline double exponential01(Rng& rng) {
  return -std::log1p(-uniform01(rng));
}

// Independent stream keyed by a tuple of integers (seed, purpose, index...).
inline Rng make_stream(std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(key.size() * 2);
  for (auto k : key) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq keyed(words.begin(), words.end());
  return Rng(keyed);
}

}  // namespace fdrl
