#pragma once

#include <cstdint>

namespace dats::instgen {

/// Counter-based SplitMix64 stream.
///
/// The k-th output (k = 0, 1, ...) of a stream with key K is
///   mix64(K + (k + 1) * 0x9E3779B97F4A7C15)
/// where mix64 is the SplitMix64 finalizer
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31).
/// Because outputs depend only on (key, counter), any output can be recomputed
/// without replaying the stream, and results are identical on every platform.
///
/// split(i) derives an independent child stream with key mix64(K ^ mix64(i + 1)).
///
/// uniform(lo, hi) draws an integer uniformly on the closed range [lo, hi] using
/// Lemire's multiply-and-reject method: with n = hi - lo + 1, take a 64-bit output x,
/// form the 128-bit product x * n, reject while the low 64 bits are below
/// (2^64 - n) mod n, and return lo + (high 64 bits).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix64(std::uint64_t z);

  std::uint64_t next();
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  CounterRng split(std::uint64_t stream) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dats::instgen
