#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace uaeval::random {

/// Name recorded in output metadata for every seeded result.
inline constexpr std::string_view kGeneratorName = "philox4x32-10";

/// Counter-based Philox4x32-10 stream (Salmon et al., Random123).
///
/// A stream is addressed by (seed, major, minor): the seed is the 64-bit
/// key, major/minor fill the upper 64 counter bits and the lower 64 bits
/// count output blocks. Streams with different addresses never overlap, and
/// the output depends only on the address, so cells of a parallel job can be
/// generated in any order. Only integer arithmetic is involved, so the raw
/// sequence is identical on every platform.
///
/// Satisfies std::uniform_random_bit_generator.
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  explicit PhiloxStream(std::uint64_t seed, std::uint32_t major = 0, std::uint32_t minor = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased (Lemire's multiply-and-reject).
  /// bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// One Philox4x32-10 block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint32_t major_;
  std::uint32_t minor_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_word_ = 4;
};

}  // namespace uaeval::random
