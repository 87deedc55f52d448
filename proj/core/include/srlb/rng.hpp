#pragma once

#include <array>
#include <cstdint>

namespace srlb {

/// Philox 4x32-10 block function (Salmon et al., SC 2011). Pure: the output
/// depends only on (counter, key), which is what makes per-path streams
/// scheduling-independent.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic random stream for one simulation path. Stream identity is
/// (seed, stream_index); blocks are consumed in order but any stream can be
/// recreated independently of all others.
class PathStream {
 public:
  PathStream(std::uint64_t seed, std::uint64_t stream_index);

  /// Uniform on (0,1].
  double next_uniform();

  /// Standard normal (Box-Muller; generated in pairs, one cached).
  double next_normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int word_ = 4;              // next unconsumed 32-bit word in block_
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace srlb
