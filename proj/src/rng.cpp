#include "endobench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace endobench {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const noexcept {
  Key key = key_;
  for (int r = 0; r < kRounds; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<std::uint32_t, 4> NoiseSource::words(std::uint32_t stream, std::uint64_t index,
                                                 std::uint32_t round) const noexcept {
  return philox_({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), round, stream});
}

double NoiseSource::uniform(std::uint32_t stream, std::uint64_t index, std::uint32_t round,
                            int lane) const noexcept {
  const auto w = words(stream, index, round);
  return (static_cast<double>(w[static_cast<std::size_t>(lane & 3)]) + 0.5) * 0x1p-32;
}

double NoiseSource::normal(std::uint32_t stream, std::uint64_t index) const noexcept {
  const auto w = words(stream, index, 0);
  const double u0 = (static_cast<double>(w[0]) + 0.5) * 0x1p-32;
  const double u1 = (static_cast<double>(w[1]) + 0.5) * 0x1p-32;
  return std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * std::numbers::pi * u1);
}

std::uint32_t NoiseSource::poisson(std::uint32_t stream, std::uint64_t index, double mean) const noexcept {
  if (!(mean > 0.0)) return 0;
  if (mean > 500.0) {
    // exp(-mean) heads toward underflow; the normal approximation is tight here.
    const auto w = words(stream, index, 0);
    const double u0 = (static_cast<double>(w[2]) + 0.5) * 0x1p-32;
    const double u1 = (static_cast<double>(w[3]) + 0.5) * 0x1p-32;
    const double z = std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * std::numbers::pi * u1);
    return static_cast<std::uint32_t>(std::max(0.0, std::nearbyint(mean + std::sqrt(mean) * z)));
  }
  const double u = uniform(stream, index);
  // Sequential search from k = 0. Means stay below a few hundred here, so
  // exp(-mean) does not underflow and the walk is short.
  double p = std::exp(-mean);
  double cdf = p;
  std::uint32_t k = 0;
  const auto cap = static_cast<std::uint32_t>(mean + 40.0 * std::sqrt(mean) + 40.0);
  while (u > cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view frame_id, CorruptionType type,
                          SeverityLevel severity) noexcept {
  std::uint64_t h = splitmix64(global_seed);
  h = splitmix64(h ^ fnv1a64(frame_id));
  const std::uint64_t tag = (static_cast<std::uint64_t>(type) << 8) | static_cast<std::uint64_t>(severity.value());
  return splitmix64(h ^ tag);
}

}  // namespace endobench
