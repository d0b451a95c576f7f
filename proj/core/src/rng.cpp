#include "embopt/rng.hpp"

#include <cmath>
#include <numbers>

namespace embopt {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter, std::uint64_t lane) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0xd1342543de82ef95ULL));
  h = splitmix64(h ^ (counter * 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ lane);
  return h;
}

double bits_to_open_unit(std::uint64_t bits) noexcept {
  // 52 high bits plus one half: both ends stay exactly representable, so
  // the result never rounds to 0 or 1.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double counter_normal(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t counter, std::uint64_t index) noexcept {
  const std::uint64_t pair = index >> 1;
  const double u1 = bits_to_open_unit(counter_hash(seed, stream, counter, 2 * pair));
  const double u2 = bits_to_open_unit(counter_hash(seed, stream, counter, 2 * pair + 1));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1U) == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

double NormalBlock::next() noexcept {
  const std::uint64_t index = index_++;
  const std::uint64_t pair = index >> 1;
  if (pair != cached_pair_) {
    const double u1 = bits_to_open_unit(counter_hash(seed_, stream_, counter_, 2 * pair));
    const double u2 = bits_to_open_unit(counter_hash(seed_, stream_, counter_, 2 * pair + 1));
    radius_ = std::sqrt(-2.0 * std::log(u1));
    angle_ = 2.0 * std::numbers::pi * u2;
    cached_pair_ = pair;
  }
  return (index & 1U) == 0 ? radius_ * std::cos(angle_) : radius_ * std::sin(angle_);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

std::uint64_t RngStream::next_below(std::uint64_t n) noexcept {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

}  // namespace embopt
