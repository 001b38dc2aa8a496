#include "gmmlab/rng.hpp"

namespace gmmlab {

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t sm = mix64(mix64(seed + kGolden) ^ (stream * 0xD1B54A32D192ED03ULL + kGolden));
  for (auto& word : s_) {
    sm += kGolden;
    word = mix64(sm);
  }
}

}  // namespace gmmlab
