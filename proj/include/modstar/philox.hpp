#pragma once

#include <array>
#include <cstdint>

namespace modstar {

// Philox4x32-10 counter-based generator. The output is a pure function of
// (key, counter), so any sample can be drawn independently of the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}

  static Philox4x32 from_seed(std::uint64_t seed) {
    return Philox4x32({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  }

  Counter operator()(Counter ctr) const {
    Key key = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  // Two uniforms in the open interval (0, 1) with 53 random bits each.
  std::array<double, 2> uniform_pair(Counter ctr) const {
    const Counter r = (*this)(ctr);
    return {to_open_unit((static_cast<std::uint64_t>(r[0]) << 32) | r[1]),
            to_open_unit((static_cast<std::uint64_t>(r[2]) << 32) | r[3])};
  }

  static double to_open_unit(std::uint64_t bits) {
    // 52 bits plus a half step: the largest value is 1 - 2^-53, exactly representable.
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

  Key key_;
};

}  // namespace modstar
