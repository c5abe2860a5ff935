#pragma once

// Two-mode Gaussian-state machinery in the quadrature convention
// Q = (a + a^dagger)/sqrt(2), P = (a - a^dagger)/(i sqrt(2)).
// Phase-space ordering is (q1, p1, q2, p2); the vacuum covariance is I/2.

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "otcss/simd.hpp"

namespace otcss {

/// A point in two-mode phase space, with the complex amplitudes
/// alpha = (q1 + i p1)/sqrt(2), beta = (q2 + i p2)/sqrt(2).
struct PhasePoint4 {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;

  static PhasePoint4 from_complex(std::complex<double> alpha, std::complex<double> beta);

  std::complex<double> alpha() const;
  std::complex<double> beta() const;
  Eigen::Vector4d vector() const { return {q1, p1, q2, p2}; }
};

/// Structure-of-arrays batch of phase-space points for the vector kernels.
class PhasePoints {
 public:
  PhasePoints() = default;
  explicit PhasePoints(std::size_t reserve);

  void push_back(const PhasePoint4& x);
  std::size_t size() const noexcept { return q1_.size(); }
  PhasePoint4 operator[](std::size_t i) const { return {q1_[i], p1_[i], q2_[i], p2_[i]}; }
  simd::PointsView view() const noexcept { return {q1_, p1_, q2_, p2_}; }

 private:
  std::vector<double> q1_, p1_, q2_, p2_;
};

/// Validated 4x4 covariance matrix of a two-mode Gaussian state.
///
/// Construction checks symmetry, positive definiteness and the uncertainty
/// relation sigma + (i/2) Omega >= 0 (equivalently: both symplectic
/// eigenvalues are at least 1/2). Tolerances are relative to the matrix norm
/// because strongly squeezed states carry entries of order e^{2 lambda + 2|gamma|}.
class CovMatrix4 {
 public:
  explicit CovMatrix4(const Eigen::Matrix4d& entries);

  static CovMatrix4 vacuum();

  const Eigen::Matrix4d& matrix() const noexcept { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  Eigen::Matrix2d u() const { return m_.block<2, 2>(0, 0); }
  Eigen::Matrix2d v() const { return m_.block<2, 2>(2, 2); }
  Eigen::Matrix2d w() const { return m_.block<2, 2>(0, 2); }

  double determinant() const;

 private:
  Eigen::Matrix4d m_;
};

struct SymplecticSpectrum {
  double n_plus = 0.0;
  double n_minus = 0.0;
  double seralian = 0.0;

  double smallest() const noexcept { return n_minus; }
};

/// Block-diagonal symplectic form, [[0, 1], [-1, 0]] per mode.
Eigen::Matrix4d symplectic_form();

/// Invariant of the partially transposed matrix: det u + det v - 2 det w.
double seralian(const CovMatrix4& sigma);

/// Symplectic eigenvalues of the partially transposed covariance matrix,
/// n_plus >= n_minus. Throws InvalidCovariance if the discriminant is
/// negative beyond rounding.
SymplecticSpectrum ppt_symplectic_eigenvalues(const CovMatrix4& sigma);

/// Symplectic eigenvalues of sigma itself (no partial transpose).
SymplecticSpectrum symplectic_eigenvalues(const CovMatrix4& sigma);

/// max(0, -ln(2 n_minus)) with the PPT spectrum.
double log_negativity(const CovMatrix4& sigma);

bool is_separable(const CovMatrix4& sigma);

/// (1/pi^2) exp(-x^T sigma^{-1} x / 2). The fixed 1/pi^2 prefactor is only a
/// normalised density for pure states, so sigma must have det = 1/16
/// (NotPureState otherwise).
double wigner_of_covariance(const CovMatrix4& sigma, const PhasePoint4& x);
std::vector<double> wigner_of_covariance(const CovMatrix4& sigma, const PhasePoints& xs,
                                         simd::Isa isa = simd::active_isa());

/// Symmetric-order characteristic function tr[rho D1(alpha) D2(beta)] of the
/// zero-mean Gaussian state, with D(alpha) = exp[i(p Q - q P)].
///
/// In (q, p) coordinates this is exp(-xi^T sigma xi / 2) where xi = Omega x is
/// the generator vector (p1, -q1, p2, -q2) multiplying (Q1, P1, Q2, P2); the
/// result is real.
double cf_of_covariance(const CovMatrix4& sigma, const PhasePoint4& x);
std::vector<double> cf_of_covariance(const CovMatrix4& sigma, const PhasePoints& xs,
                                     simd::Isa isa = simd::active_isa());

/// Converts a symmetric matrix into the kernel's row-major form.
simd::Form4 to_form(const Eigen::Matrix4d& s);

}  // namespace otcss
