#pragma once

// Random physical two-mode covariance matrices for property tests.

#include <cmath>
#include <random>

#include <Eigen/Core>

namespace otcss::testing {

inline Eigen::Matrix4d local_rotation(double a, double b) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r.block<2, 2>(0, 0) << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
  r.block<2, 2>(2, 2) << std::cos(b), std::sin(b), -std::sin(b), std::cos(b);
  return r;
}

inline Eigen::Matrix4d local_squeeze(double r1, double r2) {
  return Eigen::Vector4d(std::exp(r1), std::exp(-r1), std::exp(r2), std::exp(-r2)).asDiagonal();
}

inline Eigen::Matrix4d beam_splitter(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<2, 2>(0, 0) = c * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 2) = c * Eigen::Matrix2d::Identity();
  m.block<2, 2>(0, 2) = s * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 0) = -s * Eigen::Matrix2d::Identity();
  return m;
}

/// S diag(nu1, nu1, nu2, nu2) S^T with a random symplectic S and nu >= 1/2.
inline Eigen::Matrix4d random_covariance(std::mt19937_64& rng, bool pure = false) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> sq(-1.0, 1.0);
  std::uniform_real_distribution<double> thermal(0.5, 2.0);
  const Eigen::Matrix4d s = local_rotation(angle(rng), angle(rng)) * local_squeeze(sq(rng), sq(rng)) *
                            beam_splitter(angle(rng)) * local_squeeze(sq(rng), sq(rng)) *
                            local_rotation(angle(rng), angle(rng));
  const double n1 = pure ? 0.5 : thermal(rng);
  const double n2 = pure ? 0.5 : thermal(rng);
  const Eigen::Matrix4d d = Eigen::Vector4d(n1, n1, n2, n2).asDiagonal();
  Eigen::Matrix4d sigma = s * d * s.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

}  // namespace otcss::testing
