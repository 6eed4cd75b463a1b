#pragma once

#include <cstdint>

namespace slt {

// splitmix64 finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of substream `index` under root seed `root`.
///
/// The splitting rule is counter based: the seed depends only on
/// (root, index), never on how many streams were drawn before, so a path
/// ensemble can be generated in any order or on any number of workers.
///
///     seed(root, i) = splitmix64_mix(root + (i + 1) * 0x9E3779B97F4A7C15)
constexpr std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return splitmix64_mix(root + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Substream families, so e.g. path i and MC sample i never share a seed.
inline constexpr std::uint64_t kPathStream = 0x70617468ULL;        // "path"
inline constexpr std::uint64_t kFieldStream = 0x6669656c64ULL;     // "field"
inline constexpr std::uint64_t kIsonormalStream = 0x69736f6eULL;   // "ison"

constexpr std::uint64_t family_seed(std::uint64_t root, std::uint64_t family) noexcept {
  return splitmix64_mix(root ^ splitmix64_mix(family));
}

}  // namespace slt
