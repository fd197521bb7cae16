#pragma once
#include <cstdint>

namespace flashpolar {

// SplitMix64 finalizer: cheap, full-avalanche mixing.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent seed for (stream, index) under a master seed.
// Pure function of its inputs, so worker threads can seed frames in any order
// and still reproduce the serial run exactly.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ (stream + 0x632be59bd9b4e019ull));
  h = mix64(h ^ (index + 0xd1b54a32d192ed03ull));
  return h;
}

}  // namespace flashpolar
