#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace covlrt {

/// Deterministic random stream keyed by (master_seed, stream_index).
///
/// The state is a xoshiro256++ generator whose 256-bit seed is expanded by
/// SplitMix64 from a mix of both keys, so any replicate can be regenerated in
/// isolation. Normal deviates use the inverse-cdf transform, one uniform per
/// deviate, so the number of raw draws per replicate is fixed.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256++/splitmix64";

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double next_uniform();

  double next_normal();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
};

}  // namespace covlrt
