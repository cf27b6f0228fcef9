#pragma once

#include <cstdint>

namespace semnoma {

// SplitMix64 finaliser (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based stream: element j is mix64(key + (j + 1) * golden gamma).
// The key fully determines the stream, so streams can be created in any
// order on any thread.
class Substream {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit Substream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Independent stream for realization `index` under `master_seed`.
constexpr Substream derive_substream(std::uint64_t master_seed,
                                     std::uint64_t index) noexcept {
  const std::uint64_t a = mix64(master_seed + 0x632BE59BD9B4E019ULL);
  const std::uint64_t b = mix64((index + 1) * Substream::kGamma ^ 0xD1B54A32D192ED03ULL);
  return Substream(mix64(a ^ b) ^ (a + b));
}

}  // namespace semnoma
