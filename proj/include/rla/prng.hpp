#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace rla {

// Deterministic, platform-independent random source built from a public seed.
//
// Draw k on stream `label` is SHA-256 over the frame
//   be64(|seed|) || seed || be64(|label|) || label || be64(k).
// Integers in [0, n) come from the full 256-bit digest by rejection
// sampling: a digest X is accepted iff X < n * floor(2^256 / n), i.e. iff
// X lies below the largest multiple of n that fits in 2^256; rejected
// digests advance the counter and retry. No modulo bias, and the same
// (seed, label, k) gives the same value on every platform.
class HashPrng {
 public:
  HashPrng(std::string seed, std::string stream_label);

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  std::uint64_t counter() const { return counter_; }

  const std::string& seed() const { return seed_; }
  const std::string& stream_label() const { return label_; }

  // Digest for draw counter k on this stream (exposed for self-tests).
  std::array<std::uint8_t, 32> digest_at(std::uint64_t k) const;

 private:
  std::string seed_;
  std::string label_;
  std::string frame_prefix_;  // be64(|seed|) || seed || be64(|label|) || label
  std::uint64_t counter_ = 0;
};

}  // namespace rla
