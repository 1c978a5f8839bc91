// SPDX-License-Identifier: Apache-2.0
#include "dapprox/fourier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "dapprox/errors.hpp"

namespace dapprox {

namespace {

using cld = std::complex<long double>;

// In-place iterative radix-2 FFT with sign = -1 for the forward transform.
void fft(std::vector<cld>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const long double ang =
        static_cast<long double>(sign) * 2.0L * std::numbers::pi_v<long double> /
        static_cast<long double>(len);
    const cld wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cld w(1.0L, 0.0L);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cld u = a[i + j];
        const cld v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

std::complex<double> cf_eval(const SignedMeasure& m, double t) { return m.cf(t); }

SignedMeasure invert_cf(const std::function<std::complex<double>(double)>& cf,
                        std::size_t grid_size, double alias_tol) {
  if (grid_size < 2 || (grid_size & (grid_size - 1)) != 0) {
    std::ostringstream os;
    os << "invert_cf: grid_size " << grid_size << " is not a power of two >= 2";
    throw domain_error(os.str());
  }
  const std::size_t n = grid_size;
  std::vector<cld> samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const std::complex<double> s = cf(t);
    samples[j] = cld(s.real(), s.imag());
  }
  fft(samples, -1);

  // Index m holds the mass at k = m for m < n/2 and at k = m - n otherwise.
  const std::int64_t half = static_cast<std::int64_t>(n / 2);
  std::vector<double> weights(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const std::int64_t k = static_cast<std::int64_t>(m) < half
                               ? static_cast<std::int64_t>(m)
                               : static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n);
    weights[static_cast<std::size_t>(k + half)] =
        static_cast<double>(samples[m].real() / static_cast<long double>(n));
  }

  constexpr std::size_t kBoundaryWindow = 8;
  for (std::size_t i = 0; i < kBoundaryWindow; ++i) {
    const double lo = std::abs(weights[i]);
    const double hi = std::abs(weights[n - 1 - i]);
    if (lo > alias_tol || hi > alias_tol) {
      std::ostringstream os;
      os << "invert_cf: mass " << std::max(lo, hi) << " at the wrap-around boundary exceeds "
         << alias_tol << "; grid of " << n << " points too small";
      throw grid_error(os.str());
    }
  }
  return SignedMeasure(-half, std::move(weights));
}

}  // namespace dapprox
