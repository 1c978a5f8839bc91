// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_FOURIER_HPP
#define DAPPROX_FOURIER_HPP

#include <complex>
#include <functional>

#include "dapprox/signed_measure.hpp"

namespace dapprox {

/// Fourier-Stieltjes transform of the measure at t (finite exact sum).
std::complex<double> cf_eval(const SignedMeasure& m, double t);

/// Recovers an integer-supported measure from its 2*pi-periodic transform by
/// discrete Fourier inversion on a uniform grid over [0, 2*pi). grid_size
/// must be a power of two at least twice the expected support length.
/// Supports in [-grid_size/2, grid_size/2); entries wrapping around that
/// boundary above alias_tol raise grid_error. Intended as a test oracle for
/// the pmf constructors.
SignedMeasure invert_cf(const std::function<std::complex<double>(double)>& cf,
                        std::size_t grid_size, double alias_tol = 1e-10);

}  // namespace dapprox

#endif
