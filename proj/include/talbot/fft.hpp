#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "talbot/dd.hpp"

namespace talbot {

/// e^{2*pi*i*r/q} with the argument reduced to an exact quadrant first, so
/// values at multiples of q/4 come out bit-exact (1, i, -1, -i).
inline cd unit_root(std::int64_t r, std::int64_t q) {
  r %= q;
  if (r < 0) r += q;
  std::int64_t m = (8 * r + q) / (2 * q);  // round(4r/q)
  double rem = static_cast<double>(4 * r - m * q) / static_cast<double>(4 * q);
  double c = std::cos(kTwoPi * rem);
  double s = std::sin(kTwoPi * rem);
  switch (m & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

namespace detail {

/// In-place iterative radix-2 transform, kernel e^{sign*2*pi*i*jk/n}.
inline void fft_pow2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::int64_t half = static_cast<std::int64_t>(len) / 2;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::int64_t j = 0; j < half; ++j) {
        cd w = unit_root(sign * j, static_cast<std::int64_t>(len));
        cd u = a[i + j];
        cd v = a[i + j + half] * w;
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace detail

/// Discrete Fourier transform of arbitrary length, X_k = sum_j a_j e^{sign*2*pi*i*jk/n}.
/// Power-of-two sizes go through radix-2 directly; everything else through
/// Bluestein's chirp reindexing jk = (j^2 + k^2 - (k-j)^2)/2, which needs only
/// power-of-two transforms of length >= 2n-1.  Chirp phases are reduced mod 2n
/// in exact integer arithmetic.
inline std::vector<cd> dft(std::vector<cd> a, int sign) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("dft: empty input");
  if ((n & (n - 1)) == 0) {
    detail::fft_pow2(a, sign);
    return a;
  }
  const std::int64_t nn = static_cast<std::int64_t>(n);
  const std::size_t m = detail::next_pow2(2 * n - 1);
  std::vector<cd> chirp(n);
  for (std::int64_t j = 0; j < nn; ++j)
    chirp[j] = unit_root(sign * ((j * j) % (2 * nn)), 2 * nn);
  std::vector<cd> b(m, cd(0.0)), c(m, cd(0.0));
  for (std::size_t j = 0; j < n; ++j) b[j] = a[j] * chirp[j];
  c[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) c[j] = c[m - j] = std::conj(chirp[j]);
  detail::fft_pow2(b, -1);
  detail::fft_pow2(c, -1);
  for (std::size_t j = 0; j < m; ++j) b[j] *= c[j];
  detail::fft_pow2(b, +1);
  std::vector<cd> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = b[k] * inv_m * chirp[k];
  return out;
}

}  // namespace talbot
