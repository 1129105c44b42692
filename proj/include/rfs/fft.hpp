#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rfs {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 transform; `sign` is the exponent sign
/// (-1 forward, +1 backward).  No normalization.
inline void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (n < 2) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // One twiddle table for the final stage; earlier stages stride through it.
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(n);
    tw[j] = {std::cos(ang), std::sin(ang)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * tw[j * stride];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

/// Arbitrary-length transform via Bluestein's chirp-z algorithm.
inline std::vector<std::complex<double>> bluestein(
    const std::vector<std::complex<double>>& v, int sign) {
  const std::size_t n = v.size();
  // exp(sign * i*pi*k^2/n); reduce k^2 mod 2n to keep angles small.
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    const double ang = sign * std::numbers::pi * static_cast<double>(k2) /
                       static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }

  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<std::complex<double>> a(m), b(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = v[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = b[m - k] = std::conj(chirp[k]);
  }

  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, +1);

  std::vector<std::complex<double>> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp[k];
  return out;
}

inline std::vector<std::complex<double>> transform(
    std::vector<std::complex<double>> v, int sign) {
  if (v.empty()) {
    throw std::domain_error("dft: requires length >= 1");
  }
  if (is_pow2(v.size())) {
    fft_pow2(v, sign);
    return v;
  }
  return bluestein(v, sign);
}

}  // namespace detail

/// Forward transform  X_k = sum_j v_j exp(-2*pi*i*j*k/N).
inline std::vector<std::complex<double>> dft(
    const std::vector<std::complex<double>>& v) {
  return detail::transform(v, -1);
}

/// Unnormalized backward transform  x_j = sum_k v_k exp(+2*pi*i*j*k/N).
inline std::vector<std::complex<double>> dft_backward(
    const std::vector<std::complex<double>>& v) {
  return detail::transform(v, +1);
}

/// Inverse transform; idft(dft(v)) == v up to roundoff.
inline std::vector<std::complex<double>> idft(
    const std::vector<std::complex<double>>& v) {
  auto out = detail::transform(v, +1);
  const double inv_n = 1.0 / static_cast<double>(v.size());
  for (auto& z : out) z *= inv_n;
  return out;
}

/// Linear convolution of two complex sequences (lengths na, nb -> na+nb-1),
/// zero-padded to a power of two.
inline std::vector<std::complex<double>> linear_convolution(
    const std::vector<std::complex<double>>& a,
    const std::vector<std::complex<double>>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n_out = a.size() + b.size() - 1;
  const std::size_t m = detail::next_pow2(n_out);
  std::vector<std::complex<double>> fa(m), fb(m);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  detail::fft_pow2(fa, -1);
  detail::fft_pow2(fb, -1);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  detail::fft_pow2(fa, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<std::complex<double>> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) out[k] = fa[k] * inv_m;
  return out;
}

}  // namespace rfs
