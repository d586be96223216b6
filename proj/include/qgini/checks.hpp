#pragma once

// Seeded property sweep over the Lorenz and Gini inequalities. Backs the
// `check` subcommand; each property reports how many cases it examined, how
// many violated the stated tolerance and the worst excess observed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qgini/gini.hpp"
#include "qgini/lorenz.hpp"
#include "qgini/qsystem.hpp"
#include "qgini/sampling.hpp"

namespace qgini {

struct PropertyResult {
  std::string name;
  long cases = 0;
  long violations = 0;
  // Largest amount by which an inequality was exceeded (<= 0 when clean).
  double worst_excess = -1.0;

  bool passed() const { return violations == 0; }

  /// Records one case: `excess` > 0 means the case failed.
  void record(double excess) {
    ++cases;
    worst_excess = cases == 1 ? excess : std::max(worst_excess, excess);
    if (excess > 0.0) ++violations;
  }
};

struct CheckReport {
  int dim = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed(); });
  }
};

namespace detail {

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

/// Diagonal density matrix with the given diagonal.
inline DensityMatrix diagonal_density(std::span<const double> diag) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(diag.size()),
                          static_cast<Eigen::Index>(diag.size()));
  for (std::size_t r = 0; r < diag.size(); ++r) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = diag[r];
  }
  return DensityMatrix(m);
}

/// Two diagonal density matrices sharing the ascending order `perm`.
inline std::pair<DensityMatrix, DensityMatrix> comonotonic_pair(int d, Rng& rng) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  auto make = [&] {
    std::vector<double> sorted = random_simplex(d, rng);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> diag(d);
    for (int k = 0; k < d; ++k) diag[perm[k]] = sorted[k];
    return diagonal_density(diag);
  };
  DensityMatrix a = make();
  DensityMatrix b = make();
  return {std::move(a), std::move(b)};
}

}  // namespace detail

inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kInvarianceTolerance = 1e-10;
inline constexpr double kStrictMargin = 1e-9;

inline CheckReport run_property_checks(const QuantumSystem& sys, int samples,
                                       std::uint64_t seed) {
  const int d = sys.dim();
  const double cap = gini_cap(d);
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> index(0, d - 1);

  PropertyResult lorenz_bound{"lorenz_bound"};
  PropertyResult lorenz_invariance{"lorenz_invariance"};
  PropertyResult superadditivity{"lorenz_superadditivity"};
  PropertyResult comonotonic_additivity{"comonotonic_additivity"};
  PropertyResult characterization{"position_state_characterization"};
  PropertyResult gini_range{"gini_range"};
  PropertyResult extremizers{"gini_extremizers"};
  PropertyResult joint_exclusion{"joint_extremality_exclusion"};
  PropertyResult gini_invariance{"gini_invariance"};
  PropertyResult coherent_equality{"coherent_state_equality"};
  PropertyResult subadditivity{"gini_subadditivity"};
  PropertyResult mixture_bound{"position_mixture_bound"};

  auto check_curve = [&](const LorenzCurve& curve) {
    double excess = std::abs(curve[d - 1] - 1.0) - 1e-10;
    for (int l = 0; l < d; ++l) {
      excess = std::max(excess, -curve[l] - kInequalitySlack);
      excess = std::max(excess, curve[l] - (l + 1.0) / d - kInequalitySlack);
    }
    lorenz_bound.record(excess);
  };

  for (int n = 0; n < samples; ++n) {
    const DensityMatrix rho = random_density(d, rng);
    const DensityMatrix sigma = random_density(d, rng);
    const double lambda = unit(rng);

    const auto px = position_probs(sys, rho);
    const auto pp = momentum_probs(sys, rho);
    const LorenzCurve lx = lorenz_curve(px);
    const LorenzCurve lp = lorenz_curve(pp);
    check_curve(lx);
    check_curve(lp);

    const GiniReport g = gini_report(sys, rho);
    gini_range.record(std::max({-g.g_x - kInequalitySlack,
                                g.g_x - cap - kInequalitySlack,
                                -g.g_p - kInequalitySlack,
                                g.g_p - cap - kInequalitySlack}));
    joint_exclusion.record(g.g_xp - (2.0 * cap - kStrictMargin));

    // Displacement and Fourier conjugation.
    const UnitaryMatrix disp = displacement(sys, index(rng), index(rng));
    const DensityMatrix displaced = conjugate(rho, disp);
    const DensityMatrix swapped = conjugate(rho, sys.fourier());
    const LorenzCurve dx = lorenz_curve(position_probs(sys, displaced));
    const LorenzCurve dp = lorenz_curve(momentum_probs(sys, displaced));
    const LorenzCurve sx = lorenz_curve(position_probs(sys, swapped));
    const LorenzCurve sp = lorenz_curve(momentum_probs(sys, swapped));
    lorenz_invariance.record(
        std::max({detail::max_abs_diff(dx.values(), lx.values()),
                  detail::max_abs_diff(dp.values(), lp.values()),
                  detail::max_abs_diff(sx.values(), lp.values()),
                  detail::max_abs_diff(sp.values(), lx.values())}) -
        kInvarianceTolerance);
    const GiniReport gd = gini_report(sys, displaced);
    const GiniReport gs = gini_report(sys, swapped);
    gini_invariance.record(std::max({std::abs(gd.g_xp - g.g_xp),
                                     std::abs(gs.g_xp - g.g_xp),
                                     std::abs(gs.g_x - g.g_p),
                                     std::abs(gs.g_p - g.g_x)}) -
                           kInvarianceTolerance);

    // Mixtures.
    const DensityMatrix mixed = mix(rho, sigma, lambda);
    const GiniReport gsig = gini_report(sys, sigma);
    const GiniReport gmix = gini_report(sys, mixed);
    const LorenzCurve mx = lorenz_curve(position_probs(sys, mixed));
    const LorenzCurve mp = lorenz_curve(momentum_probs(sys, mixed));
    const LorenzCurve sigx = lorenz_curve(position_probs(sys, sigma));
    const LorenzCurve sigp = lorenz_curve(momentum_probs(sys, sigma));
    double super_excess = -1.0;
    for (int l = 0; l < d; ++l) {
      super_excess = std::max(
          {super_excess,
           lambda * lx[l] + (1.0 - lambda) * sigx[l] - mx[l] - kInequalitySlack,
           lambda * lp[l] + (1.0 - lambda) * sigp[l] - mp[l] - kInequalitySlack});
    }
    superadditivity.record(super_excess);
    subadditivity.record(std::max(
        {gmix.g_x - (lambda * g.g_x + (1.0 - lambda) * gsig.g_x),
         gmix.g_p - (lambda * g.g_p + (1.0 - lambda) * gsig.g_p),
         gmix.g_xp - (lambda * g.g_xp + (1.0 - lambda) * gsig.g_xp)}) -
                         kInequalitySlack);

    // Comonotonic diagonal pairs.
    const auto [ca, cb] = detail::comonotonic_pair(d, rng);
    const DensityMatrix cmix = mix(ca, cb, lambda);
    const LorenzCurve la = lorenz_curve(position_probs(sys, ca));
    const LorenzCurve lb = lorenz_curve(position_probs(sys, cb));
    const LorenzCurve lm = lorenz_curve(position_probs(sys, cmix));
    double additivity = 0.0;
    for (int l = 0; l < d; ++l) {
      additivity = std::max(
          additivity, std::abs(lm[l] - (lambda * la[l] + (1.0 - lambda) * lb[l])));
    }
    additivity = std::max(
        additivity,
        std::abs(gini_index(position_probs(sys, cmix)) -
                 (lambda * gini_index(position_probs(sys, ca)) +
                  (1.0 - lambda) * gini_index(position_probs(sys, cb)))));
    comonotonic_additivity.record(additivity - kInequalitySlack);

    // Mixtures of position projectors.
    const std::vector<double> weights = random_simplex(d, rng);
    const GiniReport gpm = gini_report(sys, detail::diagonal_density(weights));
    mixture_bound.record(gpm.g_xp - cap - kInequalitySlack);

    // Random pure states are never position states.
    const StateVector psi = random_pure_state(d, rng);
    const LorenzCurve lpsi = lorenz_curve(position_probs(sys, psi));
    double largest_head = 0.0;
    for (int l = 0; l + 1 < d; ++l) largest_head = std::max(largest_head, lpsi[l]);
    characterization.record(1e-9 - largest_head);
  }

  // Basis projectors.
  for (int a = 0; a < d; ++a) {
    const DensityMatrix xa = pure_density(sys.position_state(a));
    const DensityMatrix pa = pure_density(sys.momentum_state(a));
    const LorenzCurve lxa = lorenz_curve(position_probs(sys, xa));
    double excess = std::abs(lxa[d - 1] - 1.0);
    for (int l = 0; l + 1 < d; ++l) excess = std::max(excess, std::abs(lxa[l]));
    characterization.record(excess - kInequalitySlack);

    const GiniReport gx = gini_report(sys, xa);
    const GiniReport gp = gini_report(sys, pa);
    extremizers.record(std::max({std::abs(gx.g_x - cap), std::abs(gx.g_p),
                                 std::abs(gp.g_p - cap), std::abs(gp.g_x)}) -
                       kInequalitySlack);
    joint_exclusion.record(gx.g_xp - (2.0 * cap - kStrictMargin));
    joint_exclusion.record(gp.g_xp - (2.0 * cap - kStrictMargin));
  }

  // Coherent states of the default fiducial share G_XP.
  const StateVector fiducial = default_fiducial(sys);
  const double reference = gini_report(sys, pure_density(fiducial)).g_xp;
  for (int alpha = 0; alpha < d; ++alpha) {
    for (int beta = 0; beta < d; ++beta) {
      const StateVector coh = coherent_state(sys, fiducial, alpha, beta);
      coherent_equality.record(
          std::abs(gini_report(sys, pure_density(coh)).g_xp - reference) -
          kInvarianceTolerance);
    }
  }

  CheckReport report;
  report.dim = d;
  report.samples = samples;
  report.seed = seed;
  report.properties = {lorenz_bound,     lorenz_invariance,  superadditivity,
                       comonotonic_additivity, characterization, gini_range,
                       extremizers,      joint_exclusion,    gini_invariance,
                       coherent_equality, subadditivity,     mixture_bound};
  return report;
}

}  // namespace qgini
