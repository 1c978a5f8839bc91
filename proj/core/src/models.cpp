// SPDX-License-Identifier: Apache-2.0
#include "dapprox/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dapprox/errors.hpp"

namespace dapprox {

namespace {

std::int64_t checked_max_sum(const OneDependentModel& m) {
  return m.summand_count() * static_cast<std::int64_t>(m.c0_bound());
}

}  // namespace

OneDependentModel::OneDependentModel(std::vector<double> eta_probs, std::int64_t n_summands,
                                     int stride, int window, Kernel kernel, std::string kind)
    : eta_p_(std::move(eta_probs)), n_(n_summands), stride_(stride), window_(window),
      kind_(std::move(kind)) {
  if (eta_p_.empty()) throw domain_error("OneDependentModel: empty chain");
  for (double p : eta_p_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw domain_error("OneDependentModel: chain probability outside [0,1]");
    }
  }
  if (n_ < 1) throw domain_error("OneDependentModel: need at least one summand");
  if (stride_ < 1 || window_ < 1) throw domain_error("OneDependentModel: bad stride/window");
  if (stride_ > window_) throw domain_error("OneDependentModel: stride > window leaves gaps");
  if (2 * stride_ < window_) {
    throw domain_error("OneDependentModel: window > 2*stride breaks 1-dependence");
  }
  if (window_ > 20) throw resource_error("OneDependentModel: window > 20 not supported");
  if (window_begin(n_) > eta_count() - 1) {
    throw domain_error("OneDependentModel: chain too short for the last summand");
  }
  if (window_end(n_) != eta_count() - 1) {
    throw domain_error("OneDependentModel: chain longer than the last summand's window");
  }
  for (std::int64_t k = 1; k < n_; ++k) {
    if (window_end(k) >= window_end(k + 1)) {
      throw domain_error("OneDependentModel: summand windows must end at distinct positions");
    }
  }

  std::set<int> widths;
  for (std::int64_t k = 1; k <= n_; ++k) widths.insert(window_width(k));
  for (int width : widths) {
    std::vector<int>& table = tables_[width];
    table.resize(std::size_t(1) << width);
    for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
      const int v = kernel(bits, width);
      if (v < 0) throw domain_error("OneDependentModel: kernel produced a negative value");
      table[bits] = v;
      c0_ = std::max(c0_, v);
    }
  }
}

std::int64_t OneDependentModel::window_end(std::int64_t k) const noexcept {
  return std::min(window_begin(k) + window_ - 1, eta_count() - 1);
}

int OneDependentModel::value(std::int64_t k, std::uint32_t bits) const {
  return table_for(k)[bits];
}

const std::vector<int>& OneDependentModel::table_for(std::int64_t k) const {
  return tables_.at(window_width(k));
}

OneDependentModel poisson_binomial_model(std::span<const double> p) {
  if (p.empty()) throw domain_error("poisson_binomial_model: empty probability sequence");
  return OneDependentModel(
      std::vector<double>(p.begin(), p.end()), static_cast<std::int64_t>(p.size()), 1, 1,
      [](std::uint32_t bits, int) { return static_cast<int>(bits & 1u); }, "poisson-binomial");
}

OneDependentModel two_runs_model(std::int64_t n, double p) {
  if (n < 1) throw domain_error("two_runs_model: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("two_runs_model: p must lie in (0,1)");
  return OneDependentModel(
      std::vector<double>(static_cast<std::size_t>(n + 1), p), n, 1, 2,
      [](std::uint32_t bits, int) { return bits == 3u ? 1 : 0; }, "two-runs");
}

double two_runs_lambda(std::int64_t n, double p) { return static_cast<double>(n) * p * p; }

double two_runs_gamma2(std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  return (nd * p * p * p * (2.0 - 3.0 * p) - 2.0 * p * p * p * (1.0 - p)) / 2.0;
}

BlockedModel::BlockedModel(OneDependentModel model, std::int64_t n, int k1, int k2, double p)
    : model_(std::move(model)), n_(n), k1_(k1), k2_(k2), p_(p) {}

double BlockedModel::pattern_prob() const {
  return std::pow(1.0 - p_, k1_) * std::pow(p_, k2_);
}

double BlockedModel::lambda() const {
  return static_cast<double>(n_ - block_length() + 1) * pattern_prob();
}

double BlockedModel::gamma2() const {
  const double a = pattern_prob();
  const double m = static_cast<double>(block_length());
  const double cnt = static_cast<double>(n_ - block_length() + 1);
  return -(a * a / 2.0) * (cnt * (2.0 * m - 1.0) - m * (m - 1.0));
}

double BlockedModel::n_tilde() const {
  const double m = static_cast<double>(block_length());
  const double cnt = static_cast<double>(n_ - block_length() + 1);
  return cnt * cnt / (cnt * (2.0 * m - 1.0) - m * (m - 1.0));
}

double BlockedModel::p_bar() const {
  return lambda() / std::floor(n_tilde());
}

BlockedModel k1k2_events_model(std::int64_t n, int k1, int k2, double p) {
  if (k1 < 1 || k2 < 1) throw domain_error("k1k2_events_model: k1 and k2 must be >= 1");
  const int m = k1 + k2;
  if (n < m) throw domain_error("k1k2_events_model: need n >= k1 + k2");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("k1k2_events_model: p must lie in (0,1)");

  const std::int64_t pattern_count = n - m + 1;
  const std::int64_t blocks = (pattern_count + m - 1) / m;
  OneDependentModel block_model(
      std::vector<double>(static_cast<std::size_t>(n), p), blocks, m, 2 * m - 1,
      [k1, k2, m](std::uint32_t bits, int width) {
        const std::uint32_t mask = (1u << m) - 1u;
        const std::uint32_t pattern = ((1u << k2) - 1u) << k1;
        int count = 0;
        for (int s = 0; s + m <= width; ++s) {
          if (((bits >> s) & mask) == pattern) ++count;
        }
        return count;
      },
      "k1k2");
  return BlockedModel(std::move(block_model), n, k1, k2, p);
}

SignedMeasure exact_sum_distribution(const OneDependentModel& model, std::size_t state_budget) {
  const std::int64_t T = model.eta_count();
  const std::int64_t n = model.summand_count();
  const std::int64_t smax = checked_max_sum(model);
  const std::size_t sum_dim = static_cast<std::size_t>(smax) + 1;
  const std::size_t layer = (std::size_t(1) << model.window()) * sum_dim;
  if (layer > state_budget / 2) {
    std::ostringstream os;
    os << "exact_sum_distribution: layer of " << layer << " states exceeds budget "
       << state_budget;
    throw resource_error(os.str());
  }

  std::vector<std::int64_t> ends(static_cast<std::size_t>(T), 0);
  for (std::int64_t k = 1; k <= n; ++k) ends[static_cast<std::size_t>(model.window_end(k))] = k;

  std::vector<double> cur(layer, 0.0), next(layer, 0.0);
  cur[0] = 1.0;
  int len = 0;                 // pending bit count
  std::int64_t sum_cap = 0;    // largest reachable sum so far

  for (std::int64_t j = 0; j < T; ++j) {
    const double pj = model.eta_prob(j);
    const std::int64_t k = ends[static_cast<std::size_t>(j)];
    int drop = 0;
    const std::vector<int>* table = nullptr;
    if (k != 0) {
      const std::int64_t next_start = k < n ? model.window_begin(k + 1) : j + 1;
      drop = static_cast<int>(next_start - model.window_begin(k));
      table = &model.table_for(k);
    }
    const int new_len = len + 1 - drop;
    const std::int64_t new_cap = std::min(smax, sum_cap + (k != 0 ? model.c0_bound() : 0));

    for (std::uint32_t bits = 0; bits < (1u << new_len); ++bits) {
      double* row = next.data() + bits * sum_dim;
      std::fill(row, row + static_cast<std::size_t>(new_cap) + 1, 0.0);
    }
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      const double* src = cur.data() + bits * sum_dim;
      for (std::int64_t s = 0; s <= sum_cap; ++s) {
        const double q = src[s];
        if (q == 0.0) continue;
        for (std::uint32_t b = 0; b <= 1; ++b) {
          const double prob = q * (b ? pj : 1.0 - pj);
          if (prob == 0.0) continue;
          const std::uint32_t nb = bits | (b << len);
          if (k != 0) {
            const std::int64_t ns = s + (*table)[nb];
            next[(nb >> drop) * sum_dim + static_cast<std::size_t>(ns)] += prob;
          } else {
            next[nb * sum_dim + static_cast<std::size_t>(s)] += prob;
          }
        }
      }
    }
    cur.swap(next);
    len = new_len;
    sum_cap = new_cap;
  }

  return SignedMeasure(0, std::vector<double>(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(sum_dim)));
}

namespace {

struct BruteForceEnumerator {
  std::int64_t eta_count;
  std::vector<long double> p;
  std::vector<std::int64_t> summand_at;  // 1-based summand ending at j, 0 if none
  std::vector<int> begin_of;             // indexed by position j where a summand ends
  std::vector<std::uint32_t> mask_of;
  std::vector<const int*> table_of;
  std::vector<long double> pmf;  // extended precision: ~2^T additions per bin

  void recurse(std::int64_t j, std::uint32_t history, long double prob, std::int64_t sum) {
    if (j == eta_count) {
      pmf[static_cast<std::size_t>(sum)] += prob;
      return;
    }
    const std::size_t uj = static_cast<std::size_t>(j);
    for (std::uint32_t b = 0; b <= 1; ++b) {
      const long double branch = prob * (b ? p[uj] : 1.0L - p[uj]);
      const std::uint32_t h = history | (b << j);
      std::int64_t s = sum;
      if (summand_at[uj] != 0) {
        s += table_of[uj][(h >> begin_of[uj]) & mask_of[uj]];
      }
      recurse(j + 1, h, branch, s);
    }
  }
};

}  // namespace

SignedMeasure brute_force_sum(const OneDependentModel& model, int max_eta) {
  const std::int64_t T = model.eta_count();
  if (T > max_eta) {
    std::ostringstream os;
    os << "brute_force_sum: " << T << " chain variables exceed the enumeration cap " << max_eta;
    throw resource_error(os.str());
  }

  BruteForceEnumerator e;
  e.eta_count = T;
  e.p.resize(static_cast<std::size_t>(T));
  for (std::int64_t j = 0; j < T; ++j) {
    e.p[static_cast<std::size_t>(j)] = static_cast<long double>(model.eta_prob(j));
  }
  e.summand_at.assign(static_cast<std::size_t>(T), 0);
  e.begin_of.assign(static_cast<std::size_t>(T), 0);
  e.mask_of.assign(static_cast<std::size_t>(T), 0);
  e.table_of.assign(static_cast<std::size_t>(T), nullptr);
  for (std::int64_t k = 1; k <= model.summand_count(); ++k) {
    const std::size_t j = static_cast<std::size_t>(model.window_end(k));
    e.summand_at[j] = k;
    e.begin_of[j] = static_cast<int>(model.window_begin(k));
    e.mask_of[j] = (1u << model.window_width(k)) - 1u;
    e.table_of[j] = model.table_for(k).data();
  }
  e.pmf.assign(static_cast<std::size_t>(checked_max_sum(model)) + 1, 0.0L);
  e.recurse(0, 0u, 1.0L, 0);
  std::vector<double> pmf(e.pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) pmf[i] = static_cast<double>(e.pmf[i]);
  return SignedMeasure(0, std::move(pmf));
}

JointLaw joint_triple_pmf(const OneDependentModel& model, std::int64_t k) {
  if (k < 1 || k > model.summand_count()) {
    throw domain_error("joint_triple_pmf: index out of range");
  }
  const std::int64_t k_first = std::max<std::int64_t>(1, k - 2);
  const int real_coords = static_cast<int>(k - k_first + 1);
  const std::size_t d = static_cast<std::size_t>(model.c0_bound()) + 1;
  std::size_t tuple_dim = 1;
  for (int c = 0; c < real_coords; ++c) tuple_dim *= d;

  const std::int64_t lo = model.window_begin(k_first);
  const std::int64_t hi = model.window_end(k);
  const std::size_t bit_dim = std::size_t(1) << model.window();

  std::vector<double> cur(bit_dim * tuple_dim, 0.0), next(bit_dim * tuple_dim, 0.0);
  cur[0] = 1.0;
  int len = 0;
  std::int64_t pend_start = lo;
  std::int64_t next_k = k_first;

  for (std::int64_t j = lo; j <= hi; ++j) {
    const double pj = model.eta_prob(j);
    const bool completes = next_k <= k && j == model.window_end(next_k);
    int drop = 0;
    const std::vector<int>* table = nullptr;
    std::size_t coord_scale = 0;
    if (completes) {
      const std::int64_t next_start = next_k < k ? model.window_begin(next_k + 1) : j + 1;
      drop = static_cast<int>(next_start - pend_start);
      table = &model.table_for(next_k);
      coord_scale = 1;
      for (std::int64_t c = next_k - k_first + 1; c < real_coords; ++c) coord_scale *= d;
    }
    const int new_len = len + 1 - drop;

    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>((std::size_t(1) << new_len) * tuple_dim), 0.0);
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      for (std::size_t t = 0; t < tuple_dim; ++t) {
        const double q = cur[bits * tuple_dim + t];
        if (q == 0.0) continue;
        for (std::uint32_t b = 0; b <= 1; ++b) {
          const double prob = q * (b ? pj : 1.0 - pj);
          const std::uint32_t nb = bits | (b << len);
          if (completes) {
            const std::size_t nt = t + static_cast<std::size_t>((*table)[nb]) * coord_scale;
            next[(nb >> drop) * tuple_dim + nt] += prob;
          } else {
            next[nb * tuple_dim + t] += prob;
          }
        }
      }
    }
    cur.swap(next);
    len = new_len;
    if (completes) {
      pend_start += drop;
      ++next_k;
    }
  }

  std::vector<double> probs(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(tuple_dim));
  std::vector<std::vector<double>> values(3);
  std::vector<double> support(d);
  for (std::size_t v = 0; v < d; ++v) support[v] = static_cast<double>(v);
  for (int c = 0; c < 3; ++c) {
    const std::int64_t idx = k - 2 + c;
    values[static_cast<std::size_t>(c)] = idx >= 1 ? support : std::vector<double>{0.0};
  }
  return JointLaw(std::move(values), std::move(probs));
}

std::vector<double> marginal_pmf(const OneDependentModel& model, std::int64_t k) {
  const std::size_t d = static_cast<std::size_t>(model.c0_bound()) + 1;
  if (k < 1) {
    std::vector<double> unit(d, 0.0);
    unit[0] = 1.0;
    return unit;
  }
  const JointLaw triple = joint_triple_pmf(model, k);
  const int keep[] = {2};
  const JointLaw m = triple.marginal(keep);
  std::vector<double> pmf(d, 0.0);
  for (std::size_t v = 0; v < d; ++v) {
    const int idx[] = {static_cast<int>(v)};
    pmf[v] = m.prob(idx);
  }
  return pmf;
}

}  // namespace dapprox
