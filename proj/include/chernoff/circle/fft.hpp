#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "chernoff/errors.hpp"

namespace chernoff::circle {

namespace detail {

// Forward twiddles exp(-2*pi*i*k/n), k < n/2, built once per size. Entries
// come straight from std::polar so the table is identical on every thread.
inline const std::vector<std::complex<double>>& twiddle_table(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<std::vector<std::complex<double>>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto table = std::make_unique<std::vector<std::complex<double>>>(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
      (*table)[k] =
          std::polar(1.0, -2.0 * std::numbers::pi * double(k) / double(n));
    slot = std::move(table);
  }
  return *slot;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  const auto& tw = twiddle_table(n);

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = tw[k * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = a[block + k];
        const std::complex<double> v = a[block + k + len / 2] * w;
        a[block + k] = u + v;
        a[block + k + len / 2] = u - v;
      }
    }
  }
}

// Plain DFT fallback for even sizes that are not powers of two.
inline void dft_generic(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += a[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                        double((k * j) % n) / double(n));
    out[k] = acc;
  }
  a = std::move(out);
}

}  // namespace detail

// In-place complex FFT; the inverse includes the 1/n scaling. Fixed
// butterfly order makes results bitwise reproducible.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0) throw DimensionError("fft of empty vector");
  if (detail::is_power_of_two(n))
    detail::fft_radix2(a, inverse);
  else
    detail::dft_generic(a, inverse);
  if (inverse)
    for (auto& z : a) z /= double(n);
}

inline std::vector<std::complex<double>> fft_forward(const double* data,
                                                     std::size_t n) {
  std::vector<std::complex<double>> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = std::complex<double>(data[j], 0.0);
  fft_inplace(a, /*inverse=*/false);
  return a;
}

}  // namespace chernoff::circle
