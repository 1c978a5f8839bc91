// SPDX-License-Identifier: Apache-2.0
#include "dapprox/signed_measure.hpp"

#include <algorithm>
#include <cmath>

#include "dapprox/detail/compensated.hpp"

namespace dapprox {

SignedMeasure::SignedMeasure() : offset_(0), weights_{0.0} {}

SignedMeasure::SignedMeasure(std::int64_t offset, std::vector<double> weights)
    : offset_(offset), weights_(std::move(weights)) {
  std::size_t first = 0;
  while (first < weights_.size() && weights_[first] == 0.0) ++first;
  if (first == weights_.size()) {
    offset_ = 0;
    weights_.assign(1, 0.0);
    return;
  }
  std::size_t last = weights_.size() - 1;
  while (last > first && weights_[last] == 0.0) --last;
  if (first > 0 || last + 1 < weights_.size()) {
    weights_.erase(weights_.begin() + static_cast<std::ptrdiff_t>(last) + 1, weights_.end());
    weights_.erase(weights_.begin(), weights_.begin() + static_cast<std::ptrdiff_t>(first));
    offset_ += static_cast<std::int64_t>(first);
  }
}

SignedMeasure SignedMeasure::point_mass(std::int64_t at, double mass) {
  return SignedMeasure(at, {mass});
}

double SignedMeasure::at(std::int64_t k) const noexcept {
  if (k < offset_ || k > max_support()) return 0.0;
  return weights_[static_cast<std::size_t>(k - offset_)];
}

double SignedMeasure::total_mass() const {
  detail::CompensatedSum s;
  for (double w : weights_) s.add(w);
  return s.value();
}

double SignedMeasure::cdf(std::int64_t x) const {
  if (x < offset_) return 0.0;
  if (x >= max_support()) return total_mass();
  detail::CompensatedSum s;
  for (std::int64_t k = offset_; k <= x; ++k) {
    s.add(weights_[static_cast<std::size_t>(k - offset_)]);
  }
  return s.value();
}

double SignedMeasure::mean() const {
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    s.add(static_cast<double>(offset_ + static_cast<std::int64_t>(i)) * weights_[i]);
  }
  return s.value();
}

double SignedMeasure::variance() const {
  const double m = mean();
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double d = static_cast<double>(offset_ + static_cast<std::int64_t>(i)) - m;
    s.add(d * d * weights_[i]);
  }
  return s.value();
}

std::complex<double> SignedMeasure::cf(double t) const {
  std::complex<long double> acc(0.0L, 0.0L);
  const long double lt = static_cast<long double>(t);
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const long double k = static_cast<long double>(offset_ + static_cast<std::int64_t>(i));
    acc += static_cast<long double>(weights_[i]) *
           std::complex<long double>(std::cos(k * lt), std::sin(k * lt));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

SignedMeasure& SignedMeasure::scale(double c) {
  for (double& w : weights_) w *= c;
  return *this;
}

namespace {

SignedMeasure combine(const SignedMeasure& a, const SignedMeasure& b, double sign) {
  const std::int64_t lo = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  std::vector<double> w(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::int64_t k = lo; k <= hi; ++k) {
    w[static_cast<std::size_t>(k - lo)] = a.at(k) + sign * b.at(k);
  }
  return SignedMeasure(lo, std::move(w));
}

}  // namespace

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
  return combine(a, b, 1.0);
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
  return combine(a, b, -1.0);
}

SignedMeasure operator*(double c, SignedMeasure m) {
  m.scale(c);
  return m;
}

SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b) {
  const auto wa = a.weights();
  const auto wb = b.weights();
  std::vector<double> out(wa.size() + wb.size() - 1, 0.0);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) {
      out[i + j] += wa[i] * wb[j];
    }
  }
  return SignedMeasure(a.offset() + b.offset(), std::move(out));
}

double max_abs_diff(const SignedMeasure& a, const SignedMeasure& b) {
  const std::int64_t lo = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  double worst = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    worst = std::max(worst, std::abs(a.at(k) - b.at(k)));
  }
  return worst;
}

}  // namespace dapprox
