// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_MODELS_HPP
#define DAPPROX_MODELS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dapprox/joint_law.hpp"
#include "dapprox/signed_measure.hpp"

namespace dapprox {

/// A sequence X_1..X_n of nonnegative-integer summands driven by a hidden
/// chain of independent Bernoulli variables eta_0..eta_{T-1} (0-based):
/// X_k = kernel(eta bits in [(k-1)*stride, (k-1)*stride + window - 1]), the
/// last window clamped to the chain end. Requiring 2*stride >= window makes
/// the windows of X_k and X_{k+2} disjoint, so 1-dependence is structural.
/// Immutable after construction; all member functions are const.
class OneDependentModel {
 public:
  /// bits holds the window's eta values, oldest eta in bit 0.
  using Kernel = std::function<int(std::uint32_t bits, int width)>;

  OneDependentModel(std::vector<double> eta_probs, std::int64_t n_summands, int stride,
                    int window, Kernel kernel, std::string kind);

  std::int64_t summand_count() const noexcept { return n_; }
  int stride() const noexcept { return stride_; }
  int window() const noexcept { return window_; }
  int c0_bound() const noexcept { return c0_; }
  std::int64_t eta_count() const noexcept { return static_cast<std::int64_t>(eta_p_.size()); }
  double eta_prob(std::int64_t j) const { return eta_p_[static_cast<std::size_t>(j)]; }
  const std::string& kind() const noexcept { return kind_; }

  /// 0-based inclusive eta range feeding summand k (1-based).
  std::int64_t window_begin(std::int64_t k) const noexcept { return (k - 1) * stride_; }
  std::int64_t window_end(std::int64_t k) const noexcept;
  int window_width(std::int64_t k) const noexcept {
    return static_cast<int>(window_end(k) - window_begin(k) + 1);
  }

  /// Kernel value of summand k on the given window bits (table-backed).
  int value(std::int64_t k, std::uint32_t bits) const;

  /// Precomputed kernel table of summand k, indexed by window bits.
  const std::vector<int>& table_for(std::int64_t k) const;

 private:
  std::vector<double> eta_p_;
  std::int64_t n_;
  int stride_;
  int window_;
  int c0_ = 0;
  std::string kind_;
  std::map<int, std::vector<int>> tables_;  // width -> kernel table
};

/// Independent Bernoulli(p_i) summands; X_i = eta_i.
OneDependentModel poisson_binomial_model(std::span<const double> p);

/// X_i = eta_i * eta_{i+1} over n+1 Bernoulli(p) variables.
OneDependentModel two_runs_model(std::int64_t n, double p);

double two_runs_lambda(std::int64_t n, double p);
double two_runs_gamma2(std::int64_t n, double p);

/// Pattern-count summands grouped m at a time so the groups are 1-dependent
/// Bernoulli indicators. Wraps the block-level OneDependentModel together
/// with the pattern-level closed forms.
class BlockedModel {
 public:
  BlockedModel(OneDependentModel model, std::int64_t n, int k1, int k2, double p);

  const OneDependentModel& model() const noexcept { return model_; }
  std::int64_t n() const noexcept { return n_; }
  int k1() const noexcept { return k1_; }
  int k2() const noexcept { return k2_; }
  int block_length() const noexcept { return k1_ + k2_; }
  double p() const noexcept { return p_; }

  /// a(p) = (1-p)^{k1} p^{k2}, the single-position pattern probability.
  double pattern_prob() const;
  /// (n-m+1) a(p)
  double lambda() const;
  /// -a(p)^2/2 * [(n-m+1)(2m-1) - m(m-1)]
  double gamma2() const;
  /// (n-m+1)^2 / [(n-m+1)(2m-1) - m(m-1)]
  double n_tilde() const;
  /// (n-m+1) a(p) / floor(n_tilde)
  double p_bar() const;

 private:
  OneDependentModel model_;
  std::int64_t n_;
  int k1_, k2_;
  double p_;
};

/// Counts of k1 failures immediately followed by k2 successes in n Bernoulli
/// trials, blocked into 1-dependent groups of m = k1 + k2 positions (the last
/// group may be shorter).
BlockedModel k1k2_events_model(std::int64_t n, int k1, int k2, double p);

/// Exact law of S_n = X_1 + ... + X_n by dynamic programming over
/// (position, pending eta bits, partial sum). Throws resource_error when the
/// streamed layer size would exceed state_budget entries.
SignedMeasure exact_sum_distribution(const OneDependentModel& model,
                                     std::size_t state_budget = 100'000'000);

/// Independent reference law: enumerates all 2^T eta assignments directly.
/// Requires eta_count <= max_eta (default 24).
SignedMeasure brute_force_sum(const OneDependentModel& model, int max_eta = 24);

/// Exact joint law of (X_{k-2}, X_{k-1}, X_k); coordinates with index <= 0
/// are degenerate at zero.
JointLaw joint_triple_pmf(const OneDependentModel& model, std::int64_t k);

/// Exact marginal pmf of X_k on {0, ..., c0_bound}; k <= 0 yields the unit
/// mass at zero.
std::vector<double> marginal_pmf(const OneDependentModel& model, std::int64_t k);

}  // namespace dapprox

#endif
