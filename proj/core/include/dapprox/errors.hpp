// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_ERRORS_HPP
#define DAPPROX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dapprox {

/// A parameter lies outside the domain of the requested operation.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A truncation loop hit its support cap before the certified tail bound
/// dropped below the requested tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double partial_abs_mass)
      : std::runtime_error(what), partial_abs_mass_(partial_abs_mass) {}
  double partial_abs_mass() const noexcept { return partial_abs_mass_; }

 private:
  double partial_abs_mass_;
};

/// A computation exceeded its configured state or enumeration budget.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Fourier inversion detected aliasing: the grid is too small for the support.
class grid_error : public std::runtime_error {
 public:
  explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

/// A metric that requires matching total masses received mismatched inputs.
class divergence_error : public std::runtime_error {
 public:
  explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dapprox

#endif
