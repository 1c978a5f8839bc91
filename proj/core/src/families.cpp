// SPDX-License-Identifier: Apache-2.0
#include "dapprox/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "dapprox/errors.hpp"

namespace dapprox {

std::int64_t FamilyParams::support_cap() const {
  if (max_support > 0) return max_support;
  return static_cast<std::int64_t>(std::ceil(10.0 * lambda + 200.0));
}

const char* family_name(ApproximationFamily f) {
  switch (f) {
    case ApproximationFamily::poisson: return "poisson";
    case ApproximationFamily::poisson_corrected: return "corrected-poisson";
    case ApproximationFamily::compound_poisson: return "compound-poisson";
    case ApproximationFamily::translated_poisson: return "translated-poisson";
    case ApproximationFamily::negative_binomial: return "negative-binomial";
    case ApproximationFamily::binomial: return "binomial";
  }
  return "?";
}

ApproximationFamily family_from_name(const std::string& name) {
  for (ApproximationFamily f :
       {ApproximationFamily::poisson, ApproximationFamily::poisson_corrected,
        ApproximationFamily::compound_poisson, ApproximationFamily::translated_poisson,
        ApproximationFamily::negative_binomial, ApproximationFamily::binomial}) {
    if (name == family_name(f)) return f;
  }
  throw domain_error("unknown approximation family: " + name);
}

namespace {

void require_positive_lambda(const FamilyParams& p, const char* who) {
  if (!(p.lambda > 0.0)) {
    std::ostringstream os;
    os << who << ": lambda must be positive, got " << p.lambda;
    throw domain_error(os.str());
  }
}

// Builds a log-concave pmf outward from its mode. up(k) = w(k+1)/w(k) must be
// nonincreasing above the mode up to up_limit, down(k) = w(k-1)/w(k)
// nonincreasing as k decreases. Growth stops once the geometric tail bound
// drops below eps or the hard limits are hit.
SignedMeasure build_from_mode(std::int64_t mode, double log_mode_weight,
                              const std::function<double(std::int64_t)>& up,
                              const std::function<double(std::int64_t)>& down,
                              double up_limit, std::int64_t lower, std::int64_t upper,
                              bool cap_is_hard_bound, double eps, const char* who) {
  std::vector<double> above;  // weights at mode, mode+1, ...
  above.push_back(std::exp(log_mode_weight));

  std::int64_t k = mode;
  double w = above.back();
  while (true) {
    if (k >= upper) {
      if (cap_is_hard_bound) break;  // true end of support (e.g. binomial N)
      double partial = 0.0;
      for (double x : above) partial += std::abs(x);
      std::ostringstream os;
      os << who << ": support cap " << upper << " reached before tail < " << eps;
      throw convergence_error(os.str(), partial);
    }
    const double u = up(k);
    const double usup = std::max(u, up_limit);
    if (usup < 1.0 && w * usup / (1.0 - usup) < eps) break;
    w *= u;
    ++k;
    if (w == 0.0) break;  // underflow past the mode: remaining tail negligible
    above.push_back(w);
  }

  std::vector<double> below;  // weights at mode-1, mode-2, ...
  k = mode;
  w = above.front();
  while (k > lower) {
    const double d = down(k);
    if (d < 1.0 && w * d / (1.0 - d) < eps) break;
    w *= d;
    --k;
    if (w == 0.0) break;
    below.push_back(w);
  }

  std::vector<double> weights(below.size() + above.size());
  std::copy(below.rbegin(), below.rend(), weights.begin());
  std::copy(above.begin(), above.end(), weights.begin() + static_cast<std::ptrdiff_t>(below.size()));
  return SignedMeasure(mode - static_cast<std::int64_t>(below.size()), std::move(weights));
}

}  // namespace

SignedMeasure poisson(const FamilyParams& params) {
  require_positive_lambda(params, "poisson");
  const double lam = params.lambda;
  const std::int64_t mode = static_cast<std::int64_t>(std::floor(lam));
  const double log_mode = -lam + static_cast<double>(mode) * std::log(lam) -
                          std::lgamma(static_cast<double>(mode) + 1.0);
  return build_from_mode(
      mode, log_mode,
      [lam](std::int64_t k) { return lam / static_cast<double>(k + 1); },
      [lam](std::int64_t k) { return static_cast<double>(k) / lam; },
      0.0, 0, params.support_cap(), false, params.truncation_eps, "poisson");
}

SignedMeasure second_order_correction(const FamilyParams& params) {
  const SignedMeasure pi = poisson(params);
  if (params.gamma2 == 0.0) return SignedMeasure();
  const auto w = pi.weights();
  std::vector<double> out(w.size() + 2, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] += params.gamma2 * w[i];
    out[i + 1] -= 2.0 * params.gamma2 * w[i];
    out[i + 2] += params.gamma2 * w[i];
  }
  return SignedMeasure(pi.offset(), std::move(out));
}

SignedMeasure compound_poisson(const FamilyParams& params) {
  require_positive_lambda(params, "compound_poisson");
  const double a1 = params.lambda - 2.0 * params.gamma2;
  const double a2 = params.gamma2;
  const double eps = params.truncation_eps;
  const std::int64_t cap = params.support_cap();
  // k at which the recursion contracts by at least 1/2 per step
  const double contraction_k = 2.0 * (std::abs(a1) + 2.0 * std::abs(a2));

  // Scaled recursion h{0} = 1, k h{k} = a1 h{k-1} + 2 a2 h{k-2}; the true
  // weight is h{k} * exp(-a1 - a2), restored per entry so that an
  // underflowing left tail comes out as exact zeros.
  long double log_scale = static_cast<long double>(-a1 - a2);
  long double hk2 = 0.0L;  // h{k-2}
  long double hk1 = 1.0L;  // h{k-1}, seeded at k = 0
  std::vector<double> weights;
  weights.push_back(static_cast<double>(std::exp(log_scale)));
  long double g_prev = std::abs(hk1 * std::exp(log_scale));
  long double g_cur = g_prev;

  for (std::int64_t k = 1;; ++k) {
    if (k > cap) {
      double partial = 0.0;
      for (double x : weights) partial += std::abs(x);
      std::ostringstream os;
      os << "compound_poisson: support cap " << cap << " reached before tail < " << eps
         << " (lambda=" << params.lambda << ", gamma2=" << params.gamma2 << ")";
      throw convergence_error(os.str(), partial);
    }
    const long double h =
        (static_cast<long double>(a1) * hk1 + 2.0L * static_cast<long double>(a2) * hk2) /
        static_cast<long double>(k);
    hk2 = hk1;
    hk1 = h;
    if (std::abs(hk1) > 1e1000L) {
      hk1 *= 1e-1000L;
      hk2 *= 1e-1000L;
      log_scale += 1000.0L * std::log(10.0L);
    }
    const long double g = hk1 * std::exp(log_scale);
    weights.push_back(static_cast<double>(g));
    g_prev = g_cur;
    g_cur = std::abs(g);
    if (static_cast<double>(k) >= contraction_k &&
        2.0L * std::max(g_cur, g_prev) < static_cast<long double>(eps)) {
      break;
    }
  }
  return SignedMeasure(0, std::move(weights));
}

TranslatedPoissonParts translated_poisson_parts(double lambda, double gamma2) {
  const double d = -2.0 * gamma2;
  const double fl = std::floor(d);
  TranslatedPoissonParts parts;
  parts.shift = static_cast<std::int64_t>(fl);
  parts.delta_tilde = d - fl;  // exact: shift + delta_tilde == -2*gamma2
  parts.rate = lambda + 2.0 * gamma2 + parts.delta_tilde;
  return parts;
}

SignedMeasure translated_poisson(const FamilyParams& params) {
  require_positive_lambda(params, "translated_poisson");
  const TranslatedPoissonParts parts = translated_poisson_parts(params.lambda, params.gamma2);
  if (!(parts.rate > 0.0)) {
    std::ostringstream os;
    os << "translated_poisson: shifted rate lambda + 2*gamma2 + delta = " << parts.rate
       << " must be positive";
    throw domain_error(os.str());
  }
  FamilyParams sub = params;
  sub.lambda = parts.rate;
  sub.gamma2 = 0.0;
  const SignedMeasure base = poisson(sub);
  return SignedMeasure(base.offset() + parts.shift,
                       std::vector<double>(base.weights().begin(), base.weights().end()));
}

NegativeBinomialParts negative_binomial_parts(double lambda, double gamma2) {
  NegativeBinomialParts parts;
  parts.q_bar = lambda / (lambda + 2.0 * gamma2);
  parts.r = lambda * lambda / (2.0 * gamma2);
  return parts;
}

SignedMeasure negative_binomial(const FamilyParams& params) {
  require_positive_lambda(params, "negative_binomial");
  if (!(params.gamma2 > 0.0)) {
    std::ostringstream os;
    os << "negative_binomial: gamma2 must be positive, got " << params.gamma2;
    throw domain_error(os.str());
  }
  const auto [r, q] = negative_binomial_parts(params.lambda, params.gamma2);
  const double log_q = std::log(params.lambda) - std::log(params.lambda + 2.0 * params.gamma2);
  const double log_1mq =
      std::log(2.0 * params.gamma2) - std::log(params.lambda + 2.0 * params.gamma2);
  const double one_mq = 2.0 * params.gamma2 / (params.lambda + 2.0 * params.gamma2);

  std::int64_t mode = 0;
  if (r > 1.0) mode = static_cast<std::int64_t>(std::floor((r - 1.0) * one_mq / (1.0 - one_mq)));
  const double md = static_cast<double>(mode);
  const double log_mode =
      std::lgamma(r + md) - std::lgamma(md + 1.0) - std::lgamma(r) + r * log_q + md * log_1mq;

  return build_from_mode(
      mode, log_mode,
      [r, one_mq](std::int64_t j) {
        return (r + static_cast<double>(j)) * one_mq / static_cast<double>(j + 1);
      },
      [r, one_mq](std::int64_t j) {
        return static_cast<double>(j) / ((r + static_cast<double>(j) - 1.0) * one_mq);
      },
      one_mq, 0, params.support_cap(), false, params.truncation_eps, "negative_binomial");
}

BinomialParts binomial_parts(double lambda, double gamma2) {
  BinomialParts parts;
  parts.n_tilde = lambda * lambda / (2.0 * std::abs(gamma2));
  parts.trials = static_cast<std::int64_t>(std::floor(parts.n_tilde));
  parts.p_bar = parts.trials > 0 ? lambda / static_cast<double>(parts.trials)
                                 : std::numeric_limits<double>::quiet_NaN();
  return parts;
}

SignedMeasure binomial_approx(const FamilyParams& params) {
  require_positive_lambda(params, "binomial_approx");
  if (!(params.gamma2 < 0.0)) {
    std::ostringstream os;
    os << "binomial_approx: gamma2 must be negative, got " << params.gamma2;
    throw domain_error(os.str());
  }
  const BinomialParts parts = binomial_parts(params.lambda, params.gamma2);
  if (parts.trials < 1) {
    std::ostringstream os;
    os << "binomial_approx: N = floor(" << parts.n_tilde << ") is zero";
    throw domain_error(os.str());
  }
  if (parts.p_bar > 1.0) {
    std::ostringstream os;
    os << "binomial_approx: p_bar = lambda/N = " << parts.p_bar << " exceeds 1";
    throw domain_error(os.str());
  }
  const std::int64_t n = parts.trials;
  const double p = parts.p_bar;
  if (p == 1.0) return SignedMeasure::point_mass(n);

  const double nd = static_cast<double>(n);
  std::int64_t mode = static_cast<std::int64_t>(std::floor((nd + 1.0) * p));
  mode = std::clamp<std::int64_t>(mode, 0, n);
  const double md = static_cast<double>(mode);
  double log_mode = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0);
  if (mode > 0) log_mode += md * std::log(p);
  if (mode < n) log_mode += (nd - md) * std::log1p(-p);

  return build_from_mode(
      mode, log_mode,
      [nd, p](std::int64_t k) {
        return (nd - static_cast<double>(k)) * p / (static_cast<double>(k + 1) * (1.0 - p));
      },
      [nd, p](std::int64_t k) {
        return static_cast<double>(k) * (1.0 - p) / ((nd - static_cast<double>(k) + 1.0) * p);
      },
      0.0, 0, n, true, params.truncation_eps, "binomial_approx");
}

bool family_admissible(ApproximationFamily f, double lambda, double gamma2) {
  if (!(lambda > 0.0)) return false;
  switch (f) {
    case ApproximationFamily::poisson:
    case ApproximationFamily::poisson_corrected:
    case ApproximationFamily::compound_poisson:
      return true;
    case ApproximationFamily::translated_poisson:
      return translated_poisson_parts(lambda, gamma2).rate > 0.0;
    case ApproximationFamily::negative_binomial:
      return gamma2 > 0.0;
    case ApproximationFamily::binomial: {
      if (!(gamma2 < 0.0)) return false;
      const BinomialParts parts = binomial_parts(lambda, gamma2);
      return parts.trials >= 1 && parts.p_bar <= 1.0;
    }
  }
  return false;
}

SignedMeasure approximate(ApproximationFamily f, const FamilyParams& params) {
  switch (f) {
    case ApproximationFamily::poisson: return poisson(params);
    case ApproximationFamily::poisson_corrected:
      return poisson(params) + second_order_correction(params);
    case ApproximationFamily::compound_poisson: return compound_poisson(params);
    case ApproximationFamily::translated_poisson: return translated_poisson(params);
    case ApproximationFamily::negative_binomial: return negative_binomial(params);
    case ApproximationFamily::binomial: return binomial_approx(params);
  }
  throw domain_error("approximate: unknown family");
}

}  // namespace dapprox
