#include "srlb/rng.hpp"

#include <cmath>
#include <numbers>

namespace srlb {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& c,
                       const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    round_once(counter, key);
  }
  return counter;
}

PathStream::PathStream(std::uint64_t seed, std::uint64_t stream_index) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  counter_ = {0u, 0u, static_cast<std::uint32_t>(stream_index),
              static_cast<std::uint32_t>(stream_index >> 32)};
}

void PathStream::refill() {
  block_ = philox4x32(counter_, key_);
  word_ = 0;
  if (++counter_[0] == 0u) ++counter_[1];  // 2^64 blocks per stream
}

double PathStream::next_uniform() {
  if (word_ >= 3) refill();
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(block_[word_]) << 32) | block_[word_ + 1];
  word_ += 2;
  // 53-bit mantissa, shifted into (0,1] so log() below stays finite.
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double PathStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace srlb
