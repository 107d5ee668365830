#include "dats/instgen/rng.hpp"

#include <stdexcept>

namespace dats::instgen {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t CounterRng::mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

std::int64_t CounterRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t n = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (n == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return lo + static_cast<std::int64_t>(m >> 64);
    }
  }
}

CounterRng CounterRng::split(std::uint64_t stream) const {
  return CounterRng(mix64(key_ ^ mix64(stream + 1)));
}

}  // namespace dats::instgen
