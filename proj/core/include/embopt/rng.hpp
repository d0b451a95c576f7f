#pragma once

#include <cstdint>

namespace embopt {

// Counter-based random numbers.
//
// Every draw is a pure function of (seed, stream id, counter, lane), hashed
// through SplitMix64 finalizers, so a value can be regenerated from its
// coordinates alone on any platform. Uniform doubles carry 53 random bits;
// normals use the Box-Muller transform on two uniforms taken from adjacent
// lanes of the same counter.

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hash of a (seed, stream, counter, lane) tuple into 64 random bits.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter, std::uint64_t lane) noexcept;

/// Maps 64 random bits to a double in the open interval (0, 1).
double bits_to_open_unit(std::uint64_t bits) noexcept;

/// Standard normal variate for entry `index` of the block addressed by
/// (seed, stream, counter). Entries 2k and 2k+1 share one Box-Muller pair.
double counter_normal(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t counter, std::uint64_t index) noexcept;

/// Sequential reader over the normals of one (seed, stream, counter) block.
/// Produces the same values as counter_normal at increasing indices while
/// hashing each Box-Muller pair once.
class NormalBlock {
 public:
  NormalBlock(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
              std::uint64_t start = 0) noexcept
      : seed_(seed), stream_(stream), counter_(counter), index_(start) {}

  double next() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
  std::uint64_t index_;
  std::uint64_t cached_pair_ = ~std::uint64_t{0};
  double radius_ = 0.0;
  double angle_ = 0.0;
};

/// Combines a sequence of integers into one 64-bit seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/// A sequential view over the counter-based generator.
///
/// Two streams with equal (seed, id) produce equal sequences. A stream is
/// single-owner mutable state; copy it to fork a replay point.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t id) noexcept : seed_(seed), id_(id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t id() const noexcept { return id_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept { return counter_hash(seed_, id_, counter_++, 0); }
  /// Uniform in (0, 1).
  double next_uniform() noexcept { return bits_to_open_unit(next_u64()); }
  /// Uniform in (lo, hi).
  double next_uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_uniform(); }
  /// Standard normal.
  double next_normal() noexcept { return counter_normal(seed_, id_, counter_++, 0); }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n) noexcept;

  /// Reserves one counter value and returns it, e.g. as a matrix draw index.
  std::uint64_t take_counter() noexcept { return counter_++; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t id_ = 0;
  std::uint64_t counter_ = 0;
};

/// Stream ids used for the distinct purposes within one run.
namespace stream_id {
inline constexpr std::uint64_t kEmbedding = 1;
inline constexpr std::uint64_t kRandomSearch = 2;
inline constexpr std::uint64_t kObjective = 3;
inline constexpr std::uint64_t kLipschitz = 4;
inline constexpr std::uint64_t kTheory = 5;
}  // namespace stream_id

}  // namespace embopt
