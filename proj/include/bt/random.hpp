#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bt {

using Rng = std::mt19937_64;

/// Seed for an independent stream named `path` under `seed`. Streams derived
/// from different paths do not depend on the order in which they are used,
/// which keeps parallel runs reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view path) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ seed;  // FNV-1a over the path
  for (unsigned char c : path) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  h += 0x9E3779B97F4A7C15ull;  // splitmix64 finalizer
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
  return h ^ (h >> 31);
}

}  // namespace bt
