#pragma once
// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every walk
// owns a stream keyed by (seed, substream, sample index) so results do not
// depend on scheduling.

#include <array>
#include <cstdint>

namespace hbn {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    ctr = round(ctr, key);
    for (int i = 1; i < 10; ++i) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter round(const Counter& ctr, const Key& key) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

/// Uniform doubles in [0, 1) from Philox blocks; two doubles per block.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t substream, std::uint64_t index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        substream_(substream),
        index_(index) {}

  double uniform() {
    if (cursor_ == 2) refill();
    return buffer_[cursor_++];
  }

 private:
  void refill() {
    const Philox4x32::Counter ctr{draw_++, substream_, static_cast<std::uint32_t>(index_),
                                  static_cast<std::uint32_t>(index_ >> 32)};
    const auto out = Philox4x32::block(ctr, key_);
    buffer_[0] = to_unit(out[0], out[1]);
    buffer_[1] = to_unit(out[2], out[3]);
    cursor_ = 0;
  }

  static double to_unit(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t bits = (std::uint64_t{a >> 5} << 26) | (b >> 6);
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint32_t substream_;
  std::uint64_t index_;
  std::uint32_t draw_ = 0;
  std::array<double, 2> buffer_{};
  int cursor_ = 2;
};

}  // namespace hbn
