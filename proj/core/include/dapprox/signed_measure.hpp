// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_SIGNED_MEASURE_HPP
#define DAPPROX_SIGNED_MEASURE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace dapprox {

/// Finitely supported signed measure on the integers, stored as the index of
/// the first weight plus a dense weight vector. Probability distributions,
/// signed approximations and their differences all use this one
/// representation. Immutable after construction except for scale().
class SignedMeasure {
 public:
  /// The zero measure: a single zero weight at the origin.
  SignedMeasure();

  /// Takes ownership of `weights`; exact zeros at either end are trimmed so
  /// that the first and last retained entries are nonzero (the all-zero
  /// input collapses to the canonical zero measure).
  SignedMeasure(std::int64_t offset, std::vector<double> weights);

  static SignedMeasure point_mass(std::int64_t at, double mass = 1.0);

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t min_support() const noexcept { return offset_; }
  std::int64_t max_support() const noexcept {
    return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Mass at the integer point k; zero outside the stored window.
  double at(std::int64_t k) const noexcept;

  /// Sum of all weights (need not be 1 for signed measures or differences).
  double total_mass() const;

  /// Partial sum of weights up to and including x.
  double cdf(std::int64_t x) const;

  /// First and second moments of the measure, mass-weighted.
  double mean() const;
  double variance() const;

  /// Fourier-Stieltjes transform: sum over k of e^{itk} * weight(k).
  std::complex<double> cf(double t) const;

  SignedMeasure& scale(double c);

  friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator*(double c, SignedMeasure m);

 private:
  std::int64_t offset_ = 0;
  std::vector<double> weights_;
};

/// Exact discrete convolution; offsets add, total masses multiply.
SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b);

/// Largest absolute pointwise weight difference over the support union.
double max_abs_diff(const SignedMeasure& a, const SignedMeasure& b);

}  // namespace dapprox

#endif
