// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dapprox/errors.hpp"
#include "dapprox/families.hpp"
#include "dapprox/fourier.hpp"
#include "helpers.hpp"

using namespace dapprox;

namespace {

std::complex<double> z(double t) { return std::polar(1.0, t) - 1.0; }

}  // namespace

TEST_CASE("constant transform inverts to delta_0") {
  const SignedMeasure m = invert_cf([](double) { return std::complex<double>(1.0, 0.0); }, 256);
  CHECK(max_abs_diff(m, SignedMeasure::point_mass(0)) < 1e-12);
}

TEST_CASE("poisson transform inverts to the constructed pmf") {
  FamilyParams params{.lambda = 2.0};
  const SignedMeasure direct = poisson(params);
  const SignedMeasure inverted =
      invert_cf([](double t) { return std::exp(2.0 * z(t)); }, 4096);
  CHECK(max_abs_diff(direct, inverted) < 1e-9);
}

TEST_CASE("compound poisson transform inverts for both signs") {
  for (double gamma2 : {0.3, -0.3}) {
    FamilyParams params{.lambda = 2.0, .gamma2 = gamma2};
    const SignedMeasure direct = compound_poisson(params);
    const SignedMeasure inverted = invert_cf(
        [gamma2](double t) { return std::exp(2.0 * z(t) + gamma2 * z(t) * z(t)); }, 4096);
    CHECK(max_abs_diff(direct, inverted) < 1e-9);
  }
}

TEST_CASE("round trip through cf_eval") {
  std::mt19937 rng(23);
  for (int i = 0; i < 25; ++i) {
    const SignedMeasure m = dapprox::testing::random_signed_measure(rng);
    const SignedMeasure back = invert_cf([&m](double t) { return cf_eval(m, t); }, 256);
    CHECK(max_abs_diff(m, back) < 1e-9);
  }
}

TEST_CASE("aliasing raises grid_error") {
  CHECK_THROWS_AS(invert_cf([](double t) { return std::exp(2000.0 * z(t)); }, 4096), grid_error);
}

TEST_CASE("grid size must be a power of two") {
  CHECK_THROWS_AS(invert_cf([](double) { return std::complex<double>(1.0, 0.0); }, 1000),
                  domain_error);
  CHECK_THROWS_AS(invert_cf([](double) { return std::complex<double>(1.0, 0.0); }, 0),
                  domain_error);
}

TEST_CASE("negative offsets survive the wrap-around convention") {
  // A unit mass at -3: transform e^{-3it}.
  const SignedMeasure m =
      invert_cf([](double t) { return std::polar(1.0, -3.0 * t); }, 256);
  CHECK(max_abs_diff(m, SignedMeasure::point_mass(-3)) < 1e-12);
}
