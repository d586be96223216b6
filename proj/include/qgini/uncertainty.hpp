#pragma once

// Closed-form bounds on the supremum of G_XP, the balanced example state
// (|X;0> + |P;0>)/norm, and a random-restart pattern search that estimates the
// supremum over pure states.
//
// Restricting the search to pure states loses nothing: G_XP is subadditive,
// hence convex on the set of density matrices, so its supremum is approached
// on extreme points.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "qgini/gini.hpp"
#include "qgini/qsystem.hpp"
#include "qgini/sampling.hpp"

namespace qgini {

struct BoundSet {
  int dim = 0;
  double gini_cap = 0.0;        // (d-1)/(d+1)
  double g_lower = 0.0;         // G_XP of the example state
  double g_strict_upper = 0.0;  // 2 (d-1)/(d+1), never attained
  double eta_upper = 0.0;       // g_strict_upper - g_lower
};

/// (d-1)/(d+1) (1 + 1/(1+sqrt d)), the value of G_XP at example_state.
inline double example_gini_closed_form(int d) {
  require_odd_dimension(d);
  const double root = std::sqrt(static_cast<double>(d));
  return gini_cap(d) * (1.0 + 1.0 / (1.0 + root));
}

inline BoundSet bounds(int d) {
  require_odd_dimension(d);
  const double root = std::sqrt(static_cast<double>(d));
  BoundSet b;
  b.dim = d;
  b.gini_cap = gini_cap(d);
  b.g_lower = example_gini_closed_form(d);
  b.g_strict_upper = 2.0 * b.gini_cap;
  b.eta_upper = b.gini_cap * root / (1.0 + root);
  return b;
}

/// |s> = d^{1/4} / sqrt(2 sqrt(d) + 2) (|X;0> + |P;0>).
inline StateVector example_state(const QuantumSystem& sys) {
  const double d = sys.dim();
  const double c = std::pow(d, 0.25) / std::sqrt(2.0 * std::sqrt(d) + 2.0);
  Vector v = sys.momentum_state(0).amplitudes();
  v(0) += 1.0;
  v *= c;
  return StateVector(std::move(v));
}

struct SearchOptions {
  int restarts = 32;
  int iterations = 2000;
  std::uint64_t seed = 42;
  double initial_step = 0.3;
  double min_step = 1e-7;
  // Worker threads for independent restarts; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// G_XP of the pure state x / |x| without building validated intermediates.
class PureStateObjective {
 public:
  explicit PureStateObjective(const QuantumSystem& sys)
      : d_(sys.dim()),
        fourier_adjoint_(sys.fourier().entries().adjoint()),
        px_(sys.dim()),
        pp_(sys.dim()) {}

  double operator()(const Vector& x) {
    const double n2 = x.squaredNorm();
    momentum_.noalias() = fourier_adjoint_ * x;
    for (int r = 0; r < d_; ++r) {
      px_[r] = std::norm(x(r)) / n2;
      pp_[r] = std::norm(momentum_(r)) / n2;
    }
    return detail::gini_from_probs(px_, scratch_) +
           detail::gini_from_probs(pp_, scratch_);
  }

 private:
  int d_;
  Matrix fourier_adjoint_;
  Vector momentum_;
  std::vector<double> px_;
  std::vector<double> pp_;
  std::vector<double> scratch_;
};

/// Unit norm, first non-negligible amplitude real and nonnegative.
inline Vector normalize_gauge(Vector x) {
  x /= x.norm();
  for (Eigen::Index r = 0; r < x.size(); ++r) {
    const double m = std::abs(x(r));
    if (m > 1e-12) {
      x *= std::conj(x(r)) / m;
      x(r) = Complex(x(r).real(), 0.0);
      break;
    }
  }
  return x;
}

struct RestartResult {
  int index = 0;
  double best_value = 0.0;
  Vector best_point;
  int iterations_used = 0;
  bool converged = false;
  // Best value after each completed iteration, when requested.
  std::vector<double> history;
};

/// Coordinate pattern search on the 2d real coordinates of a state vector.
/// One iteration polls +step and -step along every coordinate, accepting the
/// first strict improvement per coordinate; a sweep with no improvement
/// halves the step. Stops at `iterations` or once the step drops below
/// `min_step`.
inline RestartResult pattern_search(const QuantumSystem& sys,
                                    const Vector& start,
                                    const SearchOptions& options,
                                    bool record_history = false) {
  PureStateObjective objective(sys);
  const int d = sys.dim();

  RestartResult result;
  Vector x = normalize_gauge(start);
  double fx = objective(x);
  double step = options.initial_step;

  for (int it = 0; it < options.iterations; ++it) {
    bool improved = false;
    for (int j = 0; j < 2 * d; ++j) {
      const int r = j / 2;
      const Complex unit = (j % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
      for (const double sign : {1.0, -1.0}) {
        Vector y = x;
        y(r) += sign * step * unit;
        if (!(y.squaredNorm() > 0.0)) continue;
        y = normalize_gauge(std::move(y));
        const double fy = objective(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    result.iterations_used = it + 1;
    if (record_history) result.history.push_back(fx);
    if (step < options.min_step) {
      result.converged = true;
      break;
    }
  }

  result.best_value = fx;
  result.best_point = std::move(x);
  return result;
}

/// Starting point of restart `index`: the example state for index 0, a
/// seeded random pure state otherwise.
inline Vector restart_start(const QuantumSystem& sys, std::uint64_t seed,
                            int index) {
  if (index == 0) return example_state(sys).amplitudes();
  Rng rng(stream_seed(seed, static_cast<std::uint64_t>(index)));
  return random_gaussian_vector(sys.dim(), rng);
}

struct EtaEstimate {
  int dim = 0;
  double g_sup_estimate = 0.0;
  // 2(d-1)/(d+1) - g_sup_estimate; an upper estimate of eta(d) because the
  // search can only under-shoot the supremum.
  double eta_estimate = 0.0;
  BoundSet bounds;
  StateVector best_state = StateVector::basis(1, 0);
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  int best_restart = 0;
};

inline EtaEstimate estimate_sup_gini(const QuantumSystem& sys,
                                     const SearchOptions& options) {
  if (options.restarts < 1 || options.iterations < 1) {
    throw Error(ErrorKind::BudgetTooSmall,
                "restarts and iterations must be at least 1, got " +
                    std::to_string(options.restarts) + " and " +
                    std::to_string(options.iterations));
  }
  if (!(options.initial_step > 0.0) || !(options.min_step > 0.0)) {
    throw Error(ErrorKind::BudgetTooSmall, "step sizes must be positive");
  }

  std::vector<RestartResult> results(options.restarts);
  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(options.restarts));

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned worker) {
    try {
      for (int i = next++; i < options.restarts; i = next++) {
        results[i] = pattern_search(sys, restart_start(sys, options.seed, i),
                                    options);
        results[i].index = i;
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  // Max over restarts; ties go to the lowest index.
  int best = 0;
  for (int i = 1; i < options.restarts; ++i) {
    if (results[i].best_value > results[best].best_value) best = i;
  }

  EtaEstimate est;
  est.dim = sys.dim();
  est.bounds = bounds(sys.dim());
  est.g_sup_estimate = results[best].best_value;
  est.eta_estimate = est.bounds.g_strict_upper - est.g_sup_estimate;
  est.best_state = StateVector(results[best].best_point);
  est.restarts = options.restarts;
  est.iterations = options.iterations;
  est.seed = options.seed;
  est.converged = results[best].converged;
  est.best_restart = best;
  return est;
}

inline EtaEstimate estimate_sup_gini(const QuantumSystem& sys, int restarts,
                                     int iterations, std::uint64_t seed) {
  SearchOptions options;
  options.restarts = restarts;
  options.iterations = iterations;
  options.seed = seed;
  return estimate_sup_gini(sys, options);
}

}  // namespace qgini
