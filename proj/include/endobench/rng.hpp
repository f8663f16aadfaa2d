#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "endobench/corruption_type.hpp"

namespace endobench {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// every output block is a pure function of (key, counter), so any element
// of a noise field can be drawn independently of evaluation order.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(Key key) noexcept : key_(key) {}
  explicit constexpr Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] Counter operator()(Counter counter) const noexcept;

 private:
  Key key_;
};

// Random draws for one corruption invocation. `stream` separates
// independent fields (e.g. the motion angle vs. per-pixel noise); `index`
// addresses an element inside a field; `round` extends an element's
// sequence when it needs more than four words.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) noexcept : philox_(seed) {}

  [[nodiscard]] std::array<std::uint32_t, 4> words(std::uint32_t stream, std::uint64_t index,
                                                   std::uint32_t round = 0) const noexcept;

  // Uniform in the open interval (0, 1).
  [[nodiscard]] double uniform(std::uint32_t stream, std::uint64_t index, std::uint32_t round = 0,
                               int lane = 0) const noexcept;

  // Standard normal via Box-Muller on lanes (0, 1) of one block.
  [[nodiscard]] double normal(std::uint32_t stream, std::uint64_t index) const noexcept;

  // Poisson sample by CDF inversion of a single uniform.
  [[nodiscard]] std::uint32_t poisson(std::uint32_t stream, std::uint64_t index,
                                      double mean) const noexcept;

 private:
  Philox4x32 philox_;
};

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a over the bytes of `text`.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view text) noexcept;

// Per-(frame, type, severity) seed so parallel generation does not depend
// on scheduling. Pure; every input feeds the result.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view frame_id,
                                        CorruptionType type, SeverityLevel severity) noexcept;

}  // namespace endobench
