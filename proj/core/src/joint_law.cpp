// SPDX-License-Identifier: Apache-2.0
#include "dapprox/joint_law.hpp"

#include <cstddef>
#include <stdexcept>

namespace dapprox {

namespace {

std::size_t cell_count(const std::vector<std::vector<double>>& values) {
  std::size_t n = 1;
  for (const auto& v : values) n *= v.size();
  return n;
}

}  // namespace

JointLaw::JointLaw(std::vector<std::vector<double>> coordinate_values, std::vector<double> probs)
    : values_(std::move(coordinate_values)), p_(std::move(probs)) {
  if (values_.empty()) throw std::invalid_argument("JointLaw: arity must be >= 1");
  if (p_.size() != cell_count(values_)) {
    throw std::invalid_argument("JointLaw: probability table size does not match value dims");
  }
}

double JointLaw::prob(std::span<const int> value_indices) const {
  std::size_t flat = 0;
  for (std::size_t c = 0; c < values_.size(); ++c) {
    flat = flat * values_[c].size() + static_cast<std::size_t>(value_indices[c]);
  }
  return p_[flat];
}

double JointLaw::total() const {
  double s = 0.0;
  for (double x : p_) s += x;
  return s;
}

double JointLaw::product_moment(int first, int last) const {
  const int k = arity();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  double acc = 0.0;
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    std::size_t rem = flat;
    for (int c = k - 1; c >= 0; --c) {
      idx[static_cast<std::size_t>(c)] = rem % values_[static_cast<std::size_t>(c)].size();
      rem /= values_[static_cast<std::size_t>(c)].size();
    }
    double prod = p_[flat];
    if (prod == 0.0) continue;
    for (int c = first; c <= last; ++c) {
      prod *= values_[static_cast<std::size_t>(c)][idx[static_cast<std::size_t>(c)]];
    }
    acc += prod;
  }
  return acc;
}

JointLaw JointLaw::transformed(int coord, const std::function<double(double)>& fn) const {
  std::vector<std::vector<double>> values = values_;
  for (double& v : values[static_cast<std::size_t>(coord)]) v = fn(v);
  return JointLaw(std::move(values), p_);
}

JointLaw JointLaw::marginal(std::span<const int> keep) const {
  const int k = arity();
  std::vector<std::vector<double>> values;
  values.reserve(keep.size());
  for (int c : keep) values.push_back(values_[static_cast<std::size_t>(c)]);

  std::size_t out_cells = 1;
  for (const auto& v : values) out_cells *= v.size();
  std::vector<double> probs(out_cells, 0.0);

  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    std::size_t rem = flat;
    for (int c = k - 1; c >= 0; --c) {
      idx[static_cast<std::size_t>(c)] = rem % values_[static_cast<std::size_t>(c)].size();
      rem /= values_[static_cast<std::size_t>(c)].size();
    }
    std::size_t out = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out = out * values[j].size() + idx[static_cast<std::size_t>(keep[j])];
    }
    probs[out] += p_[flat];
  }
  return JointLaw(std::move(values), std::move(probs));
}

}  // namespace dapprox
