// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_FAMILIES_HPP
#define DAPPROX_FAMILIES_HPP

#include <cstdint>
#include <string>

#include "dapprox/signed_measure.hpp"

namespace dapprox {

/// Parameters shared by all approximation constructors. lambda is the target
/// mean, gamma2 = (variance - mean)/2 the dispersion correction. Infinite
/// families are truncated once a certified tail bound drops below
/// truncation_eps, never extending past max_support (0 = auto: 10*lambda+200).
struct FamilyParams {
  double lambda = 1.0;
  double gamma2 = 0.0;
  double truncation_eps = 1e-12;
  std::int64_t max_support = 0;

  std::int64_t support_cap() const;
};

/// The six approximation targets.
enum class ApproximationFamily {
  poisson,             // one-parameter Poisson
  poisson_corrected,   // Poisson plus its second-order signed correction
  compound_poisson,    // exp(lambda*z + gamma2*z^2), signed when gamma2 < 0
  translated_poisson,  // integer-shifted Poisson absorbing -2*gamma2
  negative_binomial,   // requires gamma2 > 0
  binomial,            // requires gamma2 < 0
};

const char* family_name(ApproximationFamily f);
ApproximationFamily family_from_name(const std::string& name);

/// Whether the family's parameter domain admits (lambda, gamma2).
bool family_admissible(ApproximationFamily f, double lambda, double gamma2);

/// Poisson(lambda) pmf on [0, K], K certified so the discarded tail mass is
/// below truncation_eps. The recursion is seeded at the mode via lgamma.
SignedMeasure poisson(const FamilyParams& params);

/// Second-order signed correction: gamma2 times the second difference of the
/// Poisson pmf. Total mass is zero.
SignedMeasure second_order_correction(const FamilyParams& params);

/// Compound Poisson measure with transform exp(lambda*z + gamma2*z^2), built
/// by the signed two-term recursion k*g{k} = a1*g{k-1} + 2*a2*g{k-2} with
/// a1 = lambda - 2*gamma2, a2 = gamma2. Signed when gamma2 < 0. Throws
/// convergence_error if the support cap is reached before the tail certifies.
SignedMeasure compound_poisson(const FamilyParams& params);

/// Poisson(lambda + 2*gamma2 + delta) shifted by floor(-2*gamma2), where
/// delta in [0,1) is the fractional part of -2*gamma2. The shift is negative
/// when gamma2 > 0.
SignedMeasure translated_poisson(const FamilyParams& params);

/// Negative binomial with mean lambda and variance lambda + 2*gamma2.
SignedMeasure negative_binomial(const FamilyParams& params);

/// Binomial Bi(N, pbar) with N = floor(lambda^2 / (2|gamma2|)) and
/// pbar = lambda / N; requires gamma2 < 0, N >= 1 and pbar <= 1.
SignedMeasure binomial_approx(const FamilyParams& params);

/// Dispatch on the family tag; poisson_corrected returns the sum measure.
SignedMeasure approximate(ApproximationFamily f, const FamilyParams& params);

/// Integer/fractional split of -2*gamma2: shift + delta_tilde == -2*gamma2
/// exactly, 0 <= delta_tilde < 1, and the translated Poisson rate.
struct TranslatedPoissonParts {
  std::int64_t shift;
  double delta_tilde;
  double rate;
};
TranslatedPoissonParts translated_poisson_parts(double lambda, double gamma2);

/// Closed-form solution of r(1-q)/q = lambda, r((1-q)/q)^2 = 2*gamma2.
struct NegativeBinomialParts {
  double r;
  double q_bar;
};
NegativeBinomialParts negative_binomial_parts(double lambda, double gamma2);

/// N and pbar of the binomial fit, plus the unrounded N.
struct BinomialParts {
  std::int64_t trials;
  double p_bar;
  double n_tilde;
};
BinomialParts binomial_parts(double lambda, double gamma2);

}  // namespace dapprox

#endif
