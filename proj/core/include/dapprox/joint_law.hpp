// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_JOINT_LAW_HPP
#define DAPPROX_JOINT_LAW_HPP

#include <functional>
#include <span>
#include <vector>

namespace dapprox {

/// Exact joint law of a small tuple of real-valued random variables, each
/// with finitely many values. Probabilities are stored row-major over the
/// per-coordinate value indices.
class JointLaw {
 public:
  JointLaw(std::vector<std::vector<double>> coordinate_values, std::vector<double> probs);

  int arity() const noexcept { return static_cast<int>(values_.size()); }
  const std::vector<double>& coordinate_values(int coord) const { return values_[static_cast<std::size_t>(coord)]; }
  double prob(std::span<const int> value_indices) const;
  double total() const;

  /// E[Y_first * Y_{first+1} * ... * Y_last], 0-based inclusive.
  double product_moment(int first, int last) const;

  /// Same law with coordinate `coord`'s values remapped through fn.
  JointLaw transformed(int coord, const std::function<double(double)>& fn) const;

  /// Marginal law of the listed coordinates (ascending order expected).
  JointLaw marginal(std::span<const int> keep) const;

 private:
  std::vector<std::vector<double>> values_;
  std::vector<double> p_;
};

}  // namespace dapprox

#endif
