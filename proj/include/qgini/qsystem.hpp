#pragma once

// Finite quantum system with variables in Z_d (d odd): position and momentum
// bases, Weyl-Heisenberg displacements, coherent states, density matrices and
// the measurement distributions they induce.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgini/errors.hpp"

namespace qgini {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tolerance {
inline constexpr double unitary = 1e-12;
inline constexpr double norm = 1e-10;
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigenvalue = 1e-10;
inline constexpr double probability_clamp = 1e-12;
inline constexpr double probability_sum = 1e-10;
inline constexpr double fiducial_overlap = 1e-9;
}  // namespace tolerance

namespace detail {

inline std::string format_magnitude(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": dimensions " + std::to_string(a) +
                    " and " + std::to_string(b) + " differ");
  }
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Throws unless d is an odd integer >= 3.
inline void require_odd_dimension(long long d) {
  if (d < 3) {
    throw Error(ErrorKind::DimensionTooSmall,
                "dimension must be at least 3, got " + std::to_string(d));
  }
  if (d % 2 == 0) {
    throw Error(ErrorKind::EvenDimension,
                "dimension must be odd, got " + std::to_string(d));
  }
}

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
      throw Error(ErrorKind::NotSquare, "unitary matrix must be square");
    }
    const Matrix residual =
        m_ * m_.adjoint() - Matrix::Identity(m_.rows(), m_.cols());
    const double err = detail::max_abs(residual);
    if (err > tolerance::unitary) {
      throw Error(ErrorKind::NotUnitary,
                  "U U^dagger deviates from identity by " +
                      detail::format_magnitude(err));
    }
  }

  static UnitaryMatrix identity(int d) {
    return UnitaryMatrix(Matrix::Identity(d, d));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }
  Complex operator()(int r, int s) const { return m_(r, s); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

 private:
  Matrix m_;
};

/// Normalized pure state vector in the position basis.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes) : a_(std::move(amplitudes)) {
    const double n2 = a_.squaredNorm();
    if (a_.size() == 0 || !std::isfinite(n2) ||
        std::abs(n2 - 1.0) > tolerance::norm) {
      throw Error(ErrorKind::NotNormalized,
                  "squared norm deviates from 1 by " +
                      detail::format_magnitude(std::abs(n2 - 1.0)));
    }
  }

  /// Rescales a nonzero vector to unit norm.
  static StateVector normalized(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
    }
    return StateVector(v / n);
  }

  static StateVector basis(int d, int r) {
    Vector v = Vector::Zero(d);
    v(r) = 1.0;
    return StateVector(std::move(v));
  }

  int dim() const { return static_cast<int>(a_.size()); }
  const Vector& amplitudes() const { return a_; }
  Complex operator[](int r) const { return a_(r); }

 private:
  Vector a_;
};

/// Hermitian, positive semidefinite, unit-trace matrix. Construction
/// validates all three properties.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
      throw Error(ErrorKind::NotSquare,
                  "density matrix must be a non-empty square array");
    }
    const double herm = detail::max_abs(entries - entries.adjoint());
    if (!(herm <= tolerance::hermitian)) {
      throw Error(ErrorKind::NotHermitian,
                  "largest |rho[r][s] - conj(rho[s][r])| is " +
                      detail::format_magnitude(herm));
    }
    const Complex tr = entries.trace();
    const double trace_err = std::abs(tr - Complex(1.0, 0.0));
    if (!(trace_err <= tolerance::trace)) {
      throw Error(ErrorKind::TraceNotOne,
                  "trace deviates from 1 by " +
                      detail::format_magnitude(trace_err));
    }
    m_ = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -tolerance::eigenvalue) {
      throw Error(ErrorKind::NotPositive,
                  "smallest eigenvalue is " +
                      detail::format_magnitude(smallest));
    }
  }

  static DensityMatrix maximally_mixed(int d) {
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }
  Complex operator()(int r, int s) const { return m_(r, s); }

 private:
  Matrix m_;
};

/// d nonnegative reals summing to one. Entries in [-1e-12, 0) are clamped
/// to zero; anything more negative is rejected.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> probs)
      : p_(std::move(probs)) {
    if (p_.empty()) {
      throw Error(ErrorKind::InvalidDistribution, "empty distribution");
    }
    double sum = 0.0;
    for (std::size_t r = 0; r < p_.size(); ++r) {
      double& v = p_[r];
      if (!std::isfinite(v) || v < -tolerance::probability_clamp) {
        throw Error(ErrorKind::InvalidDistribution,
                    "probability at index " + std::to_string(r) + " is " +
                        detail::format_magnitude(v));
      }
      v = std::max(v, 0.0);
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance::probability_sum) {
      throw Error(ErrorKind::InvalidDistribution,
                  "probabilities sum deviates from 1 by " +
                      detail::format_magnitude(std::abs(sum - 1.0)));
    }
  }

  static ProbabilityDistribution uniform(int d) {
    return ProbabilityDistribution(std::vector<double>(d, 1.0 / d));
  }

  int dim() const { return static_cast<int>(p_.size()); }
  std::span<const double> probs() const { return p_; }
  double operator[](std::size_t r) const { return p_[r]; }

 private:
  std::vector<double> p_;
};

/// The arena for every computation: dimension, the root of unity, the
/// inverse of 2 in Z_d and the cached Fourier matrix.
class QuantumSystem {
 public:
  explicit QuantumSystem(int d)
      : d_((require_odd_dimension(d), d)),
        roots_(make_roots(d)),
        fourier_(make_fourier(d, roots_)) {}

  int dim() const { return d_; }
  Complex omega() const { return roots_[1]; }
  /// (d+1)/2, the element 2^{-1} of Z_d.
  int half_inverse() const { return (d_ + 1) / 2; }
  const UnitaryMatrix& fourier() const { return fourier_; }

  /// Representative of k in {0, ..., d-1}.
  int reduce(long long k) const {
    long long r = k % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
  }

  /// omega^k, looked up by the residue of k rather than by repeated products.
  Complex omega_power(long long k) const { return roots_[reduce(k)]; }

  StateVector position_state(int r) const {
    return StateVector::basis(d_, reduce(r));
  }

  StateVector momentum_state(int r) const {
    return StateVector(fourier_.entries().col(reduce(r)));
  }

 private:
  static std::vector<Complex> make_roots(int d) {
    std::vector<Complex> roots(d);
    for (int k = 0; k < d; ++k) {
      roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    }
    return roots;
  }

  static UnitaryMatrix make_fourier(int d, const std::vector<Complex>& roots) {
    Matrix f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r) {
      for (int s = 0; s < d; ++s) {
        f(r, s) = roots[(static_cast<long long>(r) * s) % d] * scale;
      }
    }
    return UnitaryMatrix(std::move(f));
  }

  int d_;
  std::vector<Complex> roots_;
  UnitaryMatrix fourier_;
};

inline QuantumSystem new_system(int d) { return QuantumSystem(d); }

/// D(alpha, beta) = Z^alpha X^beta omega^{-2^{-1} alpha beta}.
inline UnitaryMatrix displacement(const QuantumSystem& sys, long long alpha,
                                  long long beta) {
  const int d = sys.dim();
  const long long a = sys.reduce(alpha);
  const long long b = sys.reduce(beta);
  const long long phase = -static_cast<long long>(sys.half_inverse()) * a * b;
  Matrix m = Matrix::Zero(d, d);
  // X^beta sends |m> to |m+beta>, then Z^alpha multiplies by omega^{alpha(m+beta)}.
  for (int col = 0; col < d; ++col) {
    const int row = sys.reduce(col + b);
    m(row, col) = sys.omega_power(a * row + phase);
  }
  return UnitaryMatrix(std::move(m));
}

/// Amplitudes proportional to (1, 2, ..., d): neither a position nor a
/// momentum state for any d >= 2.
inline StateVector default_fiducial(const QuantumSystem& sys) {
  Vector v(sys.dim());
  for (int r = 0; r < sys.dim(); ++r) v(r) = static_cast<double>(r + 1);
  return StateVector::normalized(v);
}

inline void require_nondegenerate_fiducial(const QuantumSystem& sys,
                                           const StateVector& fiducial) {
  detail::require_same_dim(sys.dim(), fiducial.dim(), "fiducial");
  const double limit = 1.0 - tolerance::fiducial_overlap;
  const Vector momentum = sys.fourier().entries().adjoint() * fiducial.amplitudes();
  for (int r = 0; r < sys.dim(); ++r) {
    if (std::abs(fiducial[r]) >= limit) {
      throw Error(ErrorKind::DegenerateFiducial,
                  "fiducial coincides with position state |X;" +
                      std::to_string(r) + ">");
    }
    if (std::abs(momentum(r)) >= limit) {
      throw Error(ErrorKind::DegenerateFiducial,
                  "fiducial coincides with momentum state |P;" +
                      std::to_string(r) + ">");
    }
  }
}

/// |alpha, beta>_coh = D(alpha, beta)|f>.
inline StateVector coherent_state(const QuantumSystem& sys,
                                  const StateVector& fiducial, long long alpha,
                                  long long beta) {
  require_nondegenerate_fiducial(sys, fiducial);
  const UnitaryMatrix d = displacement(sys, alpha, beta);
  return StateVector::normalized(d.entries() * fiducial.amplitudes());
}

inline DensityMatrix pure_density(const StateVector& state) {
  const Vector& a = state.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

inline DensityMatrix validate_density(const Matrix& entries) {
  return DensityMatrix(entries);
}

/// lambda1 rho + (1 - lambda1) sigma.
inline DensityMatrix mix(const DensityMatrix& rho, const DensityMatrix& sigma,
                         double lambda1) {
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
    throw Error(ErrorKind::WeightOutOfRange,
                "mixing weight must lie in [0, 1], got " +
                    std::to_string(lambda1));
  }
  detail::require_same_dim(rho.dim(), sigma.dim(), "mix");
  return DensityMatrix(lambda1 * rho.entries() +
                       (1.0 - lambda1) * sigma.entries());
}

/// U^dagger rho U.
inline DensityMatrix conjugate(const DensityMatrix& rho,
                               const UnitaryMatrix& u) {
  detail::require_same_dim(rho.dim(), u.dim(), "conjugate");
  return DensityMatrix(u.entries().adjoint() * rho.entries() * u.entries());
}

/// P_X(r|rho) = <X;r|rho|X;r>.
inline ProbabilityDistribution position_probs(const QuantumSystem& sys,
                                              const DensityMatrix& rho) {
  detail::require_same_dim(sys.dim(), rho.dim(), "position_probs");
  std::vector<double> p(sys.dim());
  for (int r = 0; r < sys.dim(); ++r) p[r] = rho(r, r).real();
  return ProbabilityDistribution(std::move(p));
}

/// P_P(r|rho) = <P;r|rho|P;r>, the diagonal of F^dagger rho F.
inline ProbabilityDistribution momentum_probs(const QuantumSystem& sys,
                                              const DensityMatrix& rho) {
  detail::require_same_dim(sys.dim(), rho.dim(), "momentum_probs");
  const Matrix& f = sys.fourier().entries();
  const Matrix rho_f = rho.entries() * f;
  std::vector<double> p(sys.dim());
  for (int r = 0; r < sys.dim(); ++r) {
    p[r] = f.col(r).dot(rho_f.col(r)).real();
  }
  return ProbabilityDistribution(std::move(p));
}

inline ProbabilityDistribution position_probs(const QuantumSystem& sys,
                                              const StateVector& psi) {
  detail::require_same_dim(sys.dim(), psi.dim(), "position_probs");
  std::vector<double> p(sys.dim());
  for (int r = 0; r < sys.dim(); ++r) p[r] = std::norm(psi[r]);
  return ProbabilityDistribution(std::move(p));
}

inline ProbabilityDistribution momentum_probs(const QuantumSystem& sys,
                                              const StateVector& psi) {
  detail::require_same_dim(sys.dim(), psi.dim(), "momentum_probs");
  const Vector m = sys.fourier().entries().adjoint() * psi.amplitudes();
  std::vector<double> p(sys.dim());
  for (int r = 0; r < sys.dim(); ++r) p[r] = std::norm(m(r));
  return ProbabilityDistribution(std::move(p));
}

}  // namespace qgini
