#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace poisonlab {

/// Reproducible, splittable source of randomness.
///
/// Generator family "splitmix64-stream v1": the i-th 64-bit output of stream
/// (seed, stream) is the SplitMix64 finalizer applied to key + (i + 1) * gamma,
/// where key mixes seed and stream id. Outputs depend only on (seed, stream,
/// position), so trials can be fanned out over threads by giving each one its
/// own stream. The bit-level definition is frozen; changing it changes every
/// recorded experiment.
class RandomSource {
 public:
  using result_type = std::uint64_t;
  static constexpr const char* kGeneratorName = "splitmix64-stream v1";

  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent child stream; same (parent, id) always gives the same child.
  RandomSource substream(std::uint64_t id) const;

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, bound), bound >= 1, without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);
  bool bernoulli(double p) { return uniform01() < p; }
  bool fair_coin() { return (next_u64() >> 63) != 0; }

  /// Uniformly random k-subset of {0, ..., n-1}, returned sorted.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer; also used for stable hashing of stream ids.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over bytes, used to derive stream ids from cell descriptions.
std::uint64_t stable_hash(std::string_view bytes);

}  // namespace poisonlab
