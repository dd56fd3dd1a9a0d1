#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace msc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the sub-stream addressed by `path` under `seed`. Each path element
// is hashed before being xor-ed in, so neighbouring indices give unrelated
// streams and the result depends only on (seed, path), never on call order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p));
  return s;
}

inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(seed, path));
}

// Stream tags keep the sub-streams of different consumers apart.
namespace stream_tag {
inline constexpr std::uint64_t kBasis = 0x6261736973ULL;
inline constexpr std::uint64_t kItem = 0x6974656dULL;
inline constexpr std::uint64_t kAssign = 0x61737367ULL;
inline constexpr std::uint64_t kFiber = 0x6669626572ULL;
inline constexpr std::uint64_t kKmeans = 0x6b6d65616e73ULL;
inline constexpr std::uint64_t kSketch = 0x736b65746368ULL;
inline constexpr std::uint64_t kSpectral = 0x73706563ULL;
}  // namespace stream_tag

}  // namespace msc
