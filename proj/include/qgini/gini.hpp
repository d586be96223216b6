#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "qgini/lorenz.hpp"
#include "qgini/qsystem.hpp"

namespace qgini {

/// Normalization constant N = sum_l (l+1)/d = (d+1)/2.
constexpr double gini_normalization(int d) { return (d + 1) / 2.0; }

/// Largest attainable single-basis Gini index, (d-1)/(d+1).
constexpr double gini_cap(int d) {
  return static_cast<double>(d - 1) / static_cast<double>(d + 1);
}

/// G = 1 - (2/(d+1)) sum_l L(l): 0 for the uniform distribution and
/// (d-1)/(d+1) for a point mass.
inline double gini_index(const ProbabilityDistribution& p) {
  const LorenzCurve curve = lorenz_curve(p);
  const auto values = curve.values();
  const double area = std::accumulate(values.begin(), values.end(), 0.0);
  return 1.0 - area / gini_normalization(p.dim());
}

namespace detail {

/// Same quantity as gini_index on a raw (already normalized) probability
/// vector, without building the validated types.
inline double gini_from_probs(std::span<const double> p,
                              std::vector<double>& scratch) {
  const int d = static_cast<int>(p.size());
  return 1.0 - lorenz_total(p, scratch) / gini_normalization(d);
}

}  // namespace detail

struct GiniReport {
  int dim = 0;
  double g_x = 0.0;
  double g_p = 0.0;
  double g_xp = 0.0;
  double normalization = 0.0;
};

inline GiniReport gini_report(const QuantumSystem& sys,
                              const DensityMatrix& rho) {
  GiniReport report;
  report.dim = sys.dim();
  report.g_x = gini_index(position_probs(sys, rho));
  report.g_p = gini_index(momentum_probs(sys, rho));
  report.g_xp = report.g_x + report.g_p;
  report.normalization = gini_normalization(sys.dim());
  return report;
}

inline GiniReport gini_report(const QuantumSystem& sys,
                              const StateVector& psi) {
  GiniReport report;
  report.dim = sys.dim();
  report.g_x = gini_index(position_probs(sys, psi));
  report.g_p = gini_index(momentum_probs(sys, psi));
  report.g_xp = report.g_x + report.g_p;
  report.normalization = gini_normalization(sys.dim());
  return report;
}

}  // namespace qgini
