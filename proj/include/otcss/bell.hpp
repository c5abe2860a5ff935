#pragma once

// CHSH-type combination of displaced-parity correlations,
//   B = Pi(0, 0) + Pi(alpha, 0) + Pi(0, beta) - Pi(alpha, beta),
// with alpha = sqrt(J) e^{i phi} on mode 1 and beta = sqrt(J) e^{i theta} on mode 2.

#include <optional>
#include <span>
#include <vector>

#include "otcss/gaussian.hpp"
#include "otcss/model.hpp"

namespace otcss {

class BellSetting {
 public:
  /// Angles are reduced to [0, 2 pi). Throws InvalidArgument for J < 0 or
  /// non-finite input.
  BellSetting(double j, double theta, double phi);

  double j() const noexcept { return j_; }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  std::complex<double> alpha() const;
  std::complex<double> beta() const;

 private:
  double j_;
  double theta_;
  double phi_;
};

struct BellValue {
  double value = 0.0;
  bool violates = false;

  static BellValue of(double b);
};

/// pi^2 W(x); lies in [-1, 1].
double parity_expectation(const OtcssParams& params, const PhasePoint4& x);

/// Closed form 1 + W2 + W3 - W4 with
///   W2 = exp[-2J (m1 cos^2 phi + m2 sin^2 phi)]
///   W3 = exp[-2J (m2 cos^2 theta + m1 sin^2 theta)]
///   W4 = W2 W3 exp[4 J m3 cos(theta + phi)].
BellValue bell_function(const OtcssParams& params, const BellSetting& s);

/// The same combination assembled from four closed-form Wigner evaluations.
BellValue bell_from_wigner(const OtcssParams& params, const BellSetting& s);

std::vector<double> bell_function_batch(const OtcssParams& params, std::span<const BellSetting> s,
                                        simd::Isa isa = simd::active_isa());
std::vector<double> bell_from_wigner_batch(const OtcssParams& params,
                                           std::span<const BellSetting> s,
                                           simd::Isa isa = simd::active_isa());

struct BellSearchOptions {
  int angle_steps = 64;
  int j_steps = 200;
  double j_max = 2.0;
  double tolerance = 1e-10;
  int max_iterations = 20000;
};

struct BellOptimum {
  BellSetting setting{0.0, 0.0, 0.0};
  BellValue value;
  /// Best value on the coarse grid before refinement.
  double grid_value = 0.0;
};

/// Grid search over (theta, phi) and, when `j` is empty, J in (0, j_max],
/// followed by Nelder-Mead refinement. Ties on the grid go to the lowest
/// (J, theta, phi) index, so the result is deterministic.
BellOptimum maximize_bell(const OtcssParams& params, std::optional<double> j = std::nullopt,
                          const BellSearchOptions& options = {});

}  // namespace otcss
