#pragma once

#include <array>
#include <cstdint>

#include "toeplitz/core.hpp"

namespace toeplitz {

/// Counter-based random stream (Philox4x32-10). The pair
/// (master_seed, stream_index) fully determines the sample sequence, so
/// trial k of a Monte Carlo run can be regenerated without replaying
/// trials 0..k-1, on any platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Next 32 raw bits.
  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform_open();

  /// Complex Gaussian with density exp(-|q|^2)/pi: real and imaginary parts
  /// are independent N(0, 1/2), so E|q|^2 = 1.
  Complex complex_gaussian();

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Free-function form of RngStream::complex_gaussian.
inline Complex complex_gaussian_sample(RngStream& stream) { return stream.complex_gaussian(); }

/// One Philox4x32-10 block. Exposed for the known-answer test.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

}  // namespace toeplitz
