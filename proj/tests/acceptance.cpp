// Acceptance suite: one line per criterion, PASS or FAIL, with the observed
// worst-case figure. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qgini/cli.hpp"
#include "qgini/qgini.hpp"

using namespace qgini;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures with a short description of the first few.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
    ++failures_;
  }
  void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, info_};
    return {false, std::to_string(failures_) + " failure(s): " + notes_ +
                       (info_.empty() ? "" : " | " + info_)};
  }

 private:
  int failures_ = 0;
  std::string notes_;
  std::string info_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

Outcome closed_form_reproduction() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int d : {3, 5, 7, 9, 11, 15, 21}) {
    const QuantumSystem sys(d);
    const double g = gini_report(sys, pure_density(example_state(sys))).g_xp;
    const double root = std::sqrt(static_cast<double>(d));
    const double expected = (d - 1.0) / (d + 1.0) * (1.0 + 1.0 / (1.0 + root));
    worst = std::max(worst, std::abs(g - expected));
    v.require(std::abs(g - expected) <= 1e-10, "d=" + std::to_string(d));
    if (d == 3) v.require(std::abs(g - 0.6830127) <= 5e-8, "spot d=3");
    if (d == 5) v.require(std::abs(g - 0.8726780) <= 5e-8, "spot d=5");
    if (d == 7) v.require(std::abs(g - 0.9557189) <= 5e-8, "spot d=7");
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
  v.note("max |err| " + fmt(worst));
  v.note(fmt(elapsed) + " s");
  return v.outcome();
}

Outcome example_profile() {
  Verdict v;
  const QuantumSystem sys(3);
  const StateVector s = example_state(sys);
  const ProbabilityDistribution p = position_probs(sys, s);
  std::vector<double> sorted = to_vec(p.probs());
  std::sort(sorted.begin(), sorted.end());
  const std::vector<double> printed = {0.1056624, 0.1056624, 0.7886751};
  const double root = std::sqrt(3.0);
  const std::vector<double> exact = {1 / (6 + 2 * root), 1 / (6 + 2 * root),
                                     (4 + 2 * root) / (6 + 2 * root)};
  for (int k = 0; k < 3; ++k) {
    v.require(std::abs(sorted[k] - printed[k]) <= 1e-7, "printed prob " + std::to_string(k));
    v.require(std::abs(sorted[k] - exact[k]) <= 1e-12, "exact prob " + std::to_string(k));
  }
  const auto lorenz = to_vec(lorenz_curve(p).values());
  const std::vector<double> printed_lorenz = {0.1056624, 0.2113249, 1.0};
  for (int l = 0; l < 3; ++l) {
    v.require(std::abs(lorenz[l] - printed_lorenz[l]) <= 1e-7, "lorenz " + std::to_string(l));
  }
  return v.outcome();
}

Outcome lorenz_bound() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = -1.0;
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    Rng rng(stream_seed(3, d));
    for (int n = 0; n < 1000; ++n) {
      const DensityMatrix rho = random_density(d, rng);
      for (const auto& p : {position_probs(sys, rho), momentum_probs(sys, rho)}) {
        const LorenzCurve c = lorenz_curve(p);
        for (int l = 0; l < d; ++l) {
          const double excess = std::max(-c[l], c[l] - (l + 1.0) / d - 1e-12);
          worst = std::max(worst, c[l] - (l + 1.0) / d);
          v.require(excess <= 0.0, "d=" + std::to_string(d) + " sample " + std::to_string(n));
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
  v.note("max L(l)-(l+1)/d " + fmt(worst));
  v.note(fmt(elapsed) + " s");
  return v.outcome();
}

/// Two diagonal density matrices with diagonals ascending along one shared
/// random permutation.
std::pair<DensityMatrix, DensityMatrix> shared_order_pair(int d, Rng& rng) {
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto make = [&] {
    std::vector<double> w = random_simplex(d, rng);
    std::sort(w.begin(), w.end());
    Matrix m = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) m(perm[k], perm[k]) = w[k];
    return DensityMatrix(m);
  };
  DensityMatrix a = make();
  DensityMatrix b = make();
  return {std::move(a), std::move(b)};
}

Outcome superadditivity() {
  Verdict v;
  double worst = -1.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    Rng rng(stream_seed(4, d));
    for (int n = 0; n < 500; ++n) {
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const double lambda = unit(rng);
      const DensityMatrix m = mix(rho, sigma, lambda);
      for (int basis = 0; basis < 2; ++basis) {
        auto probs = [&](const DensityMatrix& x) {
          return basis == 0 ? position_probs(sys, x) : momentum_probs(sys, x);
        };
        const auto lm = to_vec(lorenz_curve(probs(m)).values());
        const auto lr = to_vec(lorenz_curve(probs(rho)).values());
        const auto ls = to_vec(lorenz_curve(probs(sigma)).values());
        for (int l = 0; l < d; ++l) {
          const double gap = lambda * lr[l] + (1 - lambda) * ls[l] - lm[l];
          worst = std::max(worst, gap);
          v.require(gap <= 1e-12, "superadditivity d=" + std::to_string(d));
        }
      }
    }
    for (int n = 0; n < 100; ++n) {
      const auto [a, b] = shared_order_pair(d, rng);
      v.require(comonotonic(position_probs(sys, a), position_probs(sys, b)),
                "constructed pair not comonotonic");
      const double lambda = unit(rng);
      const auto lm = to_vec(lorenz_curve(position_probs(sys, mix(a, b, lambda))).values());
      const auto la = to_vec(lorenz_curve(position_probs(sys, a)).values());
      const auto lb = to_vec(lorenz_curve(position_probs(sys, b)).values());
      for (int l = 0; l < d; ++l) {
        v.require(std::abs(lm[l] - (lambda * la[l] + (1 - lambda) * lb[l])) <= 1e-12,
                  "comonotonic additivity d=" + std::to_string(d));
      }
    }
  }
  v.note("max superadditivity gap " + fmt(worst));
  return v.outcome();
}

Outcome gini_range_and_extremizers() {
  Verdict v;
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    const double cap = (d - 1.0) / (d + 1.0);
    Rng rng(stream_seed(5, d));
    for (int n = 0; n < 1000; ++n) {
      const GiniReport g = gini_report(sys, random_density(d, rng));
      v.require(g.g_x >= -1e-12 && g.g_x <= cap + 1e-12, "g_x range");
      v.require(g.g_p >= -1e-12 && g.g_p <= cap + 1e-12, "g_p range");
    }
    for (int a = 0; a < d; ++a) {
      const GiniReport gx = gini_report(sys, pure_density(sys.position_state(a)));
      v.require(std::abs(gx.g_x - cap) <= 1e-12 && std::abs(gx.g_p) <= 1e-12,
                "position projector d=" + std::to_string(d));
      const GiniReport gp = gini_report(sys, pure_density(sys.momentum_state(a)));
      v.require(std::abs(gp.g_p - cap) <= 1e-12 && std::abs(gp.g_x) <= 1e-12,
                "momentum projector d=" + std::to_string(d));
    }
    const GiniReport mixed = gini_report(sys, DensityMatrix::maximally_mixed(d));
    v.require(std::abs(mixed.g_x) <= 1e-12 && std::abs(mixed.g_p) <= 1e-12,
              "maximally mixed d=" + std::to_string(d));
  }
  return v.outcome();
}

Outcome subadditivity_and_mixture_bound() {
  Verdict v;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = -1.0;
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    Rng rng(stream_seed(6, d));
    for (int n = 0; n < 500; ++n) {
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const double lambda = unit(rng);
      const GiniReport gm = gini_report(sys, mix(rho, sigma, lambda));
      const GiniReport gr = gini_report(sys, rho);
      const GiniReport gs = gini_report(sys, sigma);
      const double ex = gm.g_x - (lambda * gr.g_x + (1 - lambda) * gs.g_x);
      const double ep = gm.g_p - (lambda * gr.g_p + (1 - lambda) * gs.g_p);
      const double exp_ = gm.g_xp - (lambda * gr.g_xp + (1 - lambda) * gs.g_xp);
      worst = std::max({worst, ex, ep, exp_});
      v.require(ex <= 1e-12 && ep <= 1e-12 && exp_ <= 1e-12,
                "subadditivity d=" + std::to_string(d));
    }
    const double cap = (d - 1.0) / (d + 1.0);
    for (int n = 0; n < 200; ++n) {
      const std::vector<double> w = random_simplex(d, rng);
      Matrix m = Matrix::Zero(d, d);
      for (int a = 0; a < d; ++a) m += w[a] * pure_density(sys.position_state(a)).entries();
      v.require(gini_report(sys, DensityMatrix(m)).g_xp <= cap + 1e-12,
                "position mixture d=" + std::to_string(d));
    }
  }
  v.note("max subadditivity gap " + fmt(worst));
  return v.outcome();
}

Outcome invariance() {
  Verdict v;
  double worst = 0.0;
  for (int d : {3, 5}) {
    const QuantumSystem sys(d);
    Rng rng(stream_seed(7, d));
    for (int n = 0; n < 10; ++n) {
      const DensityMatrix rho = random_density(d, rng);
      const auto lx = to_vec(lorenz_curve(position_probs(sys, rho)).values());
      const auto lp = to_vec(lorenz_curve(momentum_probs(sys, rho)).values());
      const double g = gini_report(sys, rho).g_xp;
      auto compare = [&](const DensityMatrix& moved, bool swap) {
        const auto mx = to_vec(lorenz_curve(position_probs(sys, moved)).values());
        const auto mp = to_vec(lorenz_curve(momentum_probs(sys, moved)).values());
        for (int l = 0; l < d; ++l) {
          const double e1 = std::abs(mx[l] - (swap ? lp[l] : lx[l]));
          const double e2 = std::abs(mp[l] - (swap ? lx[l] : lp[l]));
          worst = std::max({worst, e1, e2});
          v.require(e1 <= 1e-10 && e2 <= 1e-10, "Lorenz invariance d=" + std::to_string(d));
        }
        const double eg = std::abs(gini_report(sys, moved).g_xp - g);
        worst = std::max(worst, eg);
        v.require(eg <= 1e-10, "G_XP invariance d=" + std::to_string(d));
      };
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) compare(conjugate(rho, displacement(sys, a, b)), false);
      compare(conjugate(rho, sys.fourier()), true);
    }
  }
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    const StateVector f = default_fiducial(sys);
    const double ref = gini_report(sys, pure_density(f)).g_xp;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double e =
            std::abs(gini_report(sys, pure_density(coherent_state(sys, f, a, b))).g_xp - ref);
        worst = std::max(worst, e);
        v.require(e <= 1e-10, "coherent d=" + std::to_string(d));
      }
  }
  v.note("max deviation " + fmt(worst));
  return v.outcome();
}

Outcome uncertainty_bracket() {
  Verdict v;
  for (int d : {3, 5, 7, 11}) {
    const std::vector<std::string> args = {"estimate", "--dim", std::to_string(d),
                                           "--restarts", "32", "--iters", "2000",
                                           "--seed", "42"};
    double values[2] = {0.0, 0.0};
    double eta = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      const auto t0 = Clock::now();
      const int code = cli::run(args, out, err);
      const double elapsed = seconds_since(t0);
      v.require(code == 0, "exit code d=" + std::to_string(d) + ": " + err.str());
      v.require(elapsed < 60.0, "runtime d=" + std::to_string(d) + " " + fmt(elapsed) + " s");
      if (code != 0) return v.outcome();
      const io::json doc = io::json::parse(out.str());
      values[rep] = doc["g_sup_estimate"].get<double>();
      eta = doc["eta_estimate"].get<double>();
    }
    const double root = std::sqrt(static_cast<double>(d));
    const double cap = (d - 1.0) / (d + 1.0);
    const double g_lower = cap * (1 + 1 / (1 + root));
    const double eta_upper = cap * root / (1 + root);
    v.require(values[0] >= g_lower - 1e-9, "G_est below lower bound d=" + std::to_string(d));
    v.require(values[0] < 2 * cap, "G_est not below cap d=" + std::to_string(d));
    v.require(eta > 0.0 && eta <= eta_upper + 1e-9, "eta outside bracket d=" + std::to_string(d));
    v.require(values[0] == values[1], "nondeterministic d=" + std::to_string(d));
    v.note("d=" + std::to_string(d) + " G_est=" + fmt(values[0]) + " eta_est=" + fmt(eta));
  }
  return v.outcome();
}

Outcome operator_algebra() {
  Verdict v;
  double worst_adj = 0.0, worst_res = 0.0;
  for (int d : {3, 5, 7}) {
    const QuantumSystem sys(d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double e = (displacement(sys, a, b).entries().adjoint() -
                          displacement(sys, -a, -b).entries())
                             .cwiseAbs()
                             .maxCoeff();
        worst_adj = std::max(worst_adj, e);
        v.require(e <= 1e-12, "D adjoint d=" + std::to_string(d));
      }
  }
  for (int d : {3, 5}) {
    const QuantumSystem sys(d);
    Rng rng(stream_seed(9, d));
    const std::vector<StateVector> fiducials = {default_fiducial(sys), random_pure_state(d, rng),
                                                random_pure_state(d, rng)};
    for (const StateVector& f : fiducials) {
      Matrix sum = Matrix::Zero(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const Vector c = coherent_state(sys, f, a, b).amplitudes();
          sum += c * c.adjoint();
        }
      const double e = (sum / d - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
      worst_res = std::max(worst_res, e);
      v.require(e <= 1e-10, "resolution of identity d=" + std::to_string(d));
    }
  }
  v.note("adjoint residual " + fmt(worst_adj));
  v.note("identity residual " + fmt(worst_res));
  return v.outcome();
}

Outcome gini_forms_agree() {
  Verdict v;
  double worst = 0.0;
  for (int d : {3, 5, 7}) {
    Rng rng(stream_seed(10, d));
    for (int n = 0; n < 1000; ++n) {
      const ProbabilityDistribution p = random_distribution(d, rng);
      const double e = std::abs(gini_index(p) - oracle::gini_weighted(to_vec(p.probs())));
      worst = std::max(worst, e);
      v.require(e <= 1e-12, "d=" + std::to_string(d));
    }
  }
  v.note("max |diff| " + fmt(worst));
  return v.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1  closed-form G_XP of the balanced example state", closed_form_reproduction},
      {"2  example probability and Lorenz profile", example_profile},
      {"3  Lorenz bound 0 <= L(l) <= (l+1)/d", lorenz_bound},
      {"4  Lorenz superadditivity and comonotonic additivity", superadditivity},
      {"5  Gini range and extremizers", gini_range_and_extremizers},
      {"6  Gini subadditivity and position-mixture bound", subadditivity_and_mixture_bound},
      {"7  displacement/Fourier/coherent invariance", invariance},
      {"8  uncertainty bracket and determinism", uncertainty_bracket},
      {"9  operator algebra", operator_algebra},
      {"10 Lorenz-sum vs weighted Gini forms", gini_forms_agree},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s%s%s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.empty() ? "" : "  -- ", o.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
