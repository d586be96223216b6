#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "qgini/qsystem.hpp"

namespace qgini {

/// Permutation pi with p[pi(0)] <= p[pi(1)] <= ... <= p[pi(d-1)].
/// Ties are broken by ascending original index.
class OrderingPermutation {
 public:
  explicit OrderingPermutation(std::vector<std::size_t> order)
      : order_(std::move(order)) {}

  int dim() const { return static_cast<int>(order_.size()); }
  std::span<const std::size_t> order() const { return order_; }
  std::size_t operator[](std::size_t k) const { return order_[k]; }

  /// p rearranged into ascending order.
  std::vector<double> apply(std::span<const double> p) const {
    std::vector<double> sorted(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) sorted[k] = p[order_[k]];
    return sorted;
  }

  friend bool operator==(const OrderingPermutation&,
                         const OrderingPermutation&) = default;

 private:
  std::vector<std::size_t> order_;
};

namespace detail {

inline std::vector<std::size_t> ascending_order(std::span<const double> p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  return order;
}

/// Sum of all Lorenz values of p, i.e. sum_l sum_{k<=l} p_sorted[k].
/// `scratch` is reused to avoid allocation in tight loops.
inline double lorenz_total(std::span<const double> p,
                           std::vector<double>& scratch) {
  scratch.assign(p.begin(), p.end());
  std::sort(scratch.begin(), scratch.end());
  double partial = 0.0;
  double total = 0.0;
  for (double v : scratch) {
    partial += v;
    total += partial;
  }
  return total;
}

}  // namespace detail

inline OrderingPermutation ordering_permutation(const ProbabilityDistribution& p) {
  return OrderingPermutation(detail::ascending_order(p.probs()));
}

/// Partial sums L(l) = p[pi(0)] + ... + p[pi(l)] of the ascending-sorted
/// distribution.
class LorenzCurve {
 public:
  LorenzCurve(OrderingPermutation permutation, std::vector<double> values)
      : permutation_(std::move(permutation)), values_(std::move(values)) {}

  int dim() const { return static_cast<int>(values_.size()); }
  const OrderingPermutation& permutation() const { return permutation_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t l) const { return values_[l]; }

 private:
  OrderingPermutation permutation_;
  std::vector<double> values_;
};

inline LorenzCurve lorenz_curve(const ProbabilityDistribution& p) {
  OrderingPermutation perm = ordering_permutation(p);
  std::vector<double> values(p.dim());
  double partial = 0.0;
  for (int l = 0; l < p.dim(); ++l) {
    partial += p[perm[l]];
    values[l] = partial;
  }
  return LorenzCurve(std::move(perm), std::move(values));
}

/// True iff a common ascending ordering permutation exists, i.e.
/// (pa[r] - pa[s]) (pb[r] - pb[s]) >= 0 for every pair r, s.
inline bool comonotonic(const ProbabilityDistribution& pa,
                        const ProbabilityDistribution& pb) {
  detail::require_same_dim(pa.dim(), pb.dim(), "comonotonic");
  const int d = pa.dim();
  for (int r = 0; r < d; ++r) {
    for (int s = r + 1; s < d; ++s) {
      if ((pa[r] - pa[s]) * (pb[r] - pb[s]) < 0.0) return false;
    }
  }
  return true;
}

}  // namespace qgini
