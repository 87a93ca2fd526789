#include "rla/prng.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace rla {

namespace {

void append_be64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

// 2^256 mod n, without bignums.
std::uint64_t pow2_256_mod(std::uint64_t n) {
  unsigned __int128 r = 1 % n;
  for (int i = 0; i < 256; ++i) {
    r = (r * 2) % n;
  }
  return static_cast<std::uint64_t>(r);
}

// Whether digest + add overflows 2^256 (digest is a big-endian integer).
bool add_overflows(const std::array<std::uint8_t, 32>& digest, std::uint64_t add) {
  unsigned __int128 carry = add;
  for (int i = 31; i >= 0 && carry != 0; --i) {
    carry += digest[static_cast<std::size_t>(i)];
    carry >>= 8;
  }
  return carry != 0;
}

std::uint64_t digest_mod(const std::array<std::uint8_t, 32>& digest, std::uint64_t n) {
  unsigned __int128 r = 0;
  for (std::uint8_t b : digest) {
    r = (r * 256 + b) % n;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

HashPrng::HashPrng(std::string seed, std::string stream_label)
    : seed_(std::move(seed)), label_(std::move(stream_label)) {
  if (seed_.empty()) {
    throw std::invalid_argument("HashPrng: seed must be nonempty");
  }
  append_be64(frame_prefix_, seed_.size());
  frame_prefix_ += seed_;
  append_be64(frame_prefix_, label_.size());
  frame_prefix_ += label_;
}

std::array<std::uint8_t, 32> HashPrng::digest_at(std::uint64_t k) const {
  std::string frame = frame_prefix_;
  append_be64(frame, k);
  std::array<std::uint8_t, 32> out{};
  unsigned int out_len = 0;
  if (EVP_Digest(frame.data(), frame.size(), out.data(), &out_len, EVP_sha256(),
                 nullptr) != 1 ||
      out_len != out.size()) {
    throw std::runtime_error("HashPrng: SHA-256 failed");
  }
  return out;
}

std::uint64_t HashPrng::next_below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("HashPrng::next_below: range must be positive");
  }
  const std::uint64_t rem = pow2_256_mod(n);  // size of the rejected top region
  for (;;) {
    const auto digest = digest_at(counter_++);
    // X >= 2^256 - rem  <=>  X + rem carries out of 256 bits.
    if (rem != 0 && add_overflows(digest, rem)) {
      continue;
    }
    return digest_mod(digest, n);
  }
}

double HashPrng::next_unit() {
  constexpr std::uint64_t kTwo53 = std::uint64_t{1} << 53;
  return static_cast<double>(next_below(kTwo53)) / static_cast<double>(kTwo53);
}

}  // namespace rla
