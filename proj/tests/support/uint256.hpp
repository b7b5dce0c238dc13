#pragma once

// Minimal 256-bit fixed-point fraction for the high-precision Weyl-sum
// oracle: value = limbs/2^256 in [0,1), most significant limb last.  Only
// what the oracle needs: add mod 1, multiply by a 64-bit integer mod 1, and
// construction of frac(sqrt(2)) by bisection on the squared value.

#include <array>
#include <cstdint>

namespace testsupport {

struct UFrac256 {
  std::array<std::uint64_t, 4> limb{0, 0, 0, 0};  // limb[3] is most significant

  // frac(this * k), exact
  UFrac256 mul_u64(std::uint64_t k) const {
    UFrac256 out;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
      unsigned __int128 p = static_cast<unsigned __int128>(limb[i]) * k + carry;
      out.limb[i] = static_cast<std::uint64_t>(p);
      carry = p >> 64;
    }
    return out;  // integer part (final carry) dropped: mod 1
  }

  double to_double() const {
    return static_cast<double>(limb[3]) * 0x1p-64 + static_cast<double>(limb[2]) * 0x1p-128;
  }
};

// 512-bit helper: compare (1 + f)^2 against 2, i.e. decide f <= frac(sqrt 2).
// (1+f)^2 = 1 + 2f + f^2; condition (1+f)^2 < 2  <=>  2f + f^2 < 1.
inline bool sqrt2_frac_below(const UFrac256& f) {
  // f^2 as a 512-bit fraction; we only need whether 2f + f^2 overflows 1.
  std::array<std::uint64_t, 8> sq{};
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 carry = 0;
    for (int j = 0; j < 4; ++j) {
      unsigned __int128 cur = static_cast<unsigned __int128>(f.limb[i]) * f.limb[j] +
                              sq[i + j] + carry;
      sq[i + j] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    sq[i + 4] += static_cast<std::uint64_t>(carry);
  }
  // top 256 bits of f^2 (the fractional part at 2^-256 scale)
  std::array<std::uint64_t, 4> f2{sq[4], sq[5], sq[6], sq[7]};
  // 2f + f^2 < 1  <=>  no carry out of (2f + f2) at 256 bits
  std::array<std::uint64_t, 4> twof{};
  std::uint64_t c = 0;
  for (int i = 0; i < 4; ++i) {
    twof[i] = (f.limb[i] << 1) | c;
    c = f.limb[i] >> 63;
  }
  if (c) return false;  // 2f >= 1 already
  unsigned __int128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 cur = static_cast<unsigned __int128>(twof[i]) + f2[i] + carry;
    carry = cur >> 64;
  }
  return carry == 0;
}

// frac(sqrt(2)) to 256 bits by bitwise bisection; self-contained, no oracle
// constants.
inline UFrac256 sqrt2_frac256() {
  UFrac256 f;
  for (int bit = 255; bit >= 0; --bit) {
    UFrac256 trial = f;
    trial.limb[bit / 64] |= (std::uint64_t{1} << (bit % 64));
    if (sqrt2_frac_below(trial)) f = trial;
  }
  return f;
}

}  // namespace testsupport
