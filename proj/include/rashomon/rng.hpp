#pragma once

#include <array>
#include <cstdint>

namespace rashomon {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (key, counter), so every sample index can own an
// independent substream and parallel draws are order-independent.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

// Distinct operations seeded with the same user seed must not share streams.
enum class StreamTag : std::uint64_t {
  kLabelFlip = 0x11,
  kPerSampleFlip = 0x12,
  kAttributeNoise = 0x13,
  kAttributeNegation = 0x14,
  kGaussianPair = 0x15,
  kSplit = 0x21,
  kFolds = 0x22,
  kSynthetic = 0x31,
  kExperiment = 0x41,
  kTest = 0x99,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Derives a child seed from a parent seed and a small tuple of indices.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) noexcept;

// One substream of the Philox generator: key from (seed, tag), high counter
// words from the stream id, low counter words advance per block.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, StreamTag tag, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  // Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept;
  // Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_{};
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rashomon
