#include "otcss/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "otcss/error.hpp"

namespace otcss {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalityTol = 1e-9;
constexpr double kDiscriminantTol = 1e-9;
constexpr double kPurityTol = 1e-6;

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

// Shared by both spectra; `invariant` is det u + det v +/- 2 det w.
SymplecticSpectrum spectrum_from_invariant(double invariant, double det) {
  double disc = invariant * invariant - 4.0 * det;
  if (disc < -kDiscriminantTol * std::max(1.0, invariant * invariant)) {
    throw InvalidCovariance("negative symplectic discriminant " + std::to_string(disc));
  }
  disc = std::max(disc, 0.0);
  SymplecticSpectrum s;
  s.seralian = invariant;
  s.n_plus = std::sqrt(0.5 * (invariant + std::sqrt(disc)));
  // n_plus * n_minus = sqrt(det); the direct "minus" branch cancels badly.
  s.n_minus = std::sqrt(std::max(det, 0.0)) / s.n_plus;
  return s;
}

}  // namespace

PhasePoint4 PhasePoint4::from_complex(std::complex<double> alpha, std::complex<double> beta) {
  const double r2 = std::numbers::sqrt2;
  return {r2 * alpha.real(), r2 * alpha.imag(), r2 * beta.real(), r2 * beta.imag()};
}

std::complex<double> PhasePoint4::alpha() const {
  return std::complex<double>(q1, p1) / std::numbers::sqrt2;
}

std::complex<double> PhasePoint4::beta() const {
  return std::complex<double>(q2, p2) / std::numbers::sqrt2;
}

PhasePoints::PhasePoints(std::size_t reserve) {
  q1_.reserve(reserve);
  p1_.reserve(reserve);
  q2_.reserve(reserve);
  p2_.reserve(reserve);
}

void PhasePoints::push_back(const PhasePoint4& x) {
  q1_.push_back(x.q1);
  p1_.push_back(x.p1);
  q2_.push_back(x.q2);
  p2_.push_back(x.p2);
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

CovMatrix4::CovMatrix4(const Eigen::Matrix4d& entries) : m_(entries) {
  if (!m_.allFinite()) throw InvalidCovariance("covariance matrix has non-finite entries");

  const double scale = std::max(1.0, max_abs(m_));
  if (max_abs(m_ - m_.transpose()) > kSymmetryTol * scale) {
    throw InvalidCovariance("covariance matrix is not symmetric");
  }
  m_ = 0.5 * (m_ + m_.transpose()).eval();

  if (Eigen::LLT<Eigen::Matrix4d>(m_).info() != Eigen::Success) {
    throw InvalidCovariance("covariance matrix is not positive definite");
  }

  // Uncertainty relation: sigma + (i/2) Omega must be positive semidefinite.
  const Eigen::Matrix4cd h =
      m_.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPhysicalityTol * scale) {
    throw InvalidCovariance("covariance matrix violates the uncertainty relation");
  }
}

CovMatrix4 CovMatrix4::vacuum() { return CovMatrix4(0.5 * Eigen::Matrix4d::Identity()); }

double CovMatrix4::determinant() const { return m_.determinant(); }

double seralian(const CovMatrix4& sigma) {
  return sigma.u().determinant() + sigma.v().determinant() - 2.0 * sigma.w().determinant();
}

SymplecticSpectrum ppt_symplectic_eigenvalues(const CovMatrix4& sigma) {
  return spectrum_from_invariant(seralian(sigma), sigma.determinant());
}

SymplecticSpectrum symplectic_eigenvalues(const CovMatrix4& sigma) {
  const double invariant =
      sigma.u().determinant() + sigma.v().determinant() + 2.0 * sigma.w().determinant();
  return spectrum_from_invariant(invariant, sigma.determinant());
}

double log_negativity(const CovMatrix4& sigma) {
  const double n_s = ppt_symplectic_eigenvalues(sigma).smallest();
  return std::max(0.0, -std::log(2.0 * n_s));
}

bool is_separable(const CovMatrix4& sigma) {
  return ppt_symplectic_eigenvalues(sigma).smallest() >= 0.5 - 1e-12;
}

namespace {

void require_pure(const CovMatrix4& sigma) {
  const double det = sigma.determinant();
  const double hadamard = sigma.matrix().diagonal().prod();
  const double tol = kPurityTol * std::max(1.0, 16.0 * hadamard);
  if (std::abs(det - 1.0 / 16.0) > tol) {
    throw NotPureState("det sigma = " + std::to_string(det) + ", expected 1/16 for a pure state");
  }
}

Eigen::Matrix4d inverse_of(const CovMatrix4& sigma) {
  Eigen::Matrix4d inv = Eigen::LLT<Eigen::Matrix4d>(sigma.matrix()).solve(Eigen::Matrix4d::Identity());
  return 0.5 * (inv + inv.transpose());
}

Eigen::Matrix4d cf_form(const CovMatrix4& sigma) {
  const Eigen::Matrix4d omega = symplectic_form();
  return omega.transpose() * sigma.matrix() * omega;
}

constexpr double kInvPi2 = 1.0 / (std::numbers::pi * std::numbers::pi);

}  // namespace

simd::Form4 to_form(const Eigen::Matrix4d& s) {
  simd::Form4 f{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) f[static_cast<std::size_t>(4 * r + c)] = s(r, c);
  return f;
}

double wigner_of_covariance(const CovMatrix4& sigma, const PhasePoint4& x) {
  require_pure(sigma);
  const Eigen::Vector4d v = x.vector();
  const Eigen::Vector4d y = Eigen::LLT<Eigen::Matrix4d>(sigma.matrix()).solve(v);
  return kInvPi2 * std::exp(-0.5 * v.dot(y));
}

std::vector<double> wigner_of_covariance(const CovMatrix4& sigma, const PhasePoints& xs,
                                         simd::Isa isa) {
  require_pure(sigma);
  std::vector<double> out(xs.size());
  simd::gaussian_form(isa, to_form(inverse_of(sigma)), kInvPi2, xs.view(), out);
  return out;
}

double cf_of_covariance(const CovMatrix4& sigma, const PhasePoint4& x) {
  const Eigen::Vector4d xi(x.p1, -x.q1, x.p2, -x.q2);
  return std::exp(-0.5 * xi.dot(sigma.matrix() * xi));
}

std::vector<double> cf_of_covariance(const CovMatrix4& sigma, const PhasePoints& xs,
                                     simd::Isa isa) {
  std::vector<double> out(xs.size());
  simd::gaussian_form(isa, to_form(cf_form(sigma)), 1.0, xs.view(), out);
  return out;
}

}  // namespace otcss
