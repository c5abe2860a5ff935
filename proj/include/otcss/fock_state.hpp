#pragma once

#include <Eigen/Core>

namespace otcss {

/// Two-mode state truncated to photon numbers 0..cutoff in each mode.
/// amplitudes(m, n) is the coefficient of |m>_1 |n>_2.
///
/// norm_deficit is the probability lost to truncation; states are never
/// renormalised, so sum |c_mn|^2 + norm_deficit == 1.
struct FockState2 {
  int cutoff = 0;
  Eigen::MatrixXcd amplitudes;
  double norm_deficit = 0.0;

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

}  // namespace otcss
