#pragma once

#include <array>
#include <cstdint>

namespace lpball {

/// Identifies one independent random stream: the master seed of a run and
/// the replicate index inside it.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Default seed used whenever a caller does not pass one.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

namespace rng {

using Block = std::array<std::uint64_t, 4>;
using Key = std::array<std::uint64_t, 2>;

/// Philox4x64 with 10 rounds (Salmon et al., SC'11). A pure function of
/// (counter, key).
Block philox4x64(Block counter, Key key);

/// Uniform on the open interval (0, 1) from the top 52 bits. With 53 bits the
/// largest midpoint would round up to exactly 1.
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Standard normal quantile, Wichura's AS241 (PPND16); about 1e-16 relative
/// accuracy on (0, 1).
double inverse_normal_cdf(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Sequential draws from the counter-based stream of a SeedSpec. Output
/// number k is a pure function of (master_seed, stream, substream, k).
/// Normals are produced by inversion, one uniform per normal.
class NormalStream {
 public:
  explicit NormalStream(SeedSpec seed, std::uint64_t substream = 0)
      : key_{seed.master_seed, seed.stream}, substream_(substream) {}

  std::uint64_t next_bits() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }
  double uniform() { return to_open_unit(next_bits()); }
  double normal() { return inverse_normal_cdf(uniform()); }

 private:
  void refill() {
    buffer_ = philox4x64({block_++, substream_, 0, 0}, key_);
    pos_ = 0;
  }

  Key key_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int pos_ = 4;
};

}  // namespace rng
}  // namespace lpball
