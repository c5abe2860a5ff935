#pragma once

// The one- and two-mode combination squeezed vacuum V|00>, with
// V = exp[-i(lambda e^gamma Q1 P2 + lambda e^-gamma Q2 P1)].

#include <vector>

#include <Eigen/Core>

#include "otcss/fock_state.hpp"
#include "otcss/gaussian.hpp"

namespace otcss {

inline constexpr double kMaxLambda = 5.0;
inline constexpr double kMaxAbsGamma = 5.0;

/// Squeeze magnitude lambda >= 0 and asymmetry gamma. Both are bounded by a
/// sanity envelope (lambda <= 5, |gamma| <= 5); beyond it the covariance
/// entries grow past ~e^20 and double precision stops being meaningful.
class OtcssParams {
 public:
  OtcssParams(double lambda, double gamma);

  double lambda() const noexcept { return lambda_; }
  double gamma() const noexcept { return gamma_; }
  double lambda1() const;
  double lambda2() const;

 private:
  double lambda_;
  double gamma_;
};

/// Scalars shared by every closed form.
///   m1, m2, m3  Wigner exponent coefficients (m1 m2 - m3^2 = 1)
///   L           normalisation denominator of the Fock series
///   A, B        single-mode (b^2 - a^2) and two-mode (a b) Fock coefficients
///   f           teleportation scalar, F_coherent = 1/(1 - f)
struct Coefficients {
  double m1 = 1.0;
  double m2 = 1.0;
  double m3 = 0.0;
  double L = 4.0;
  double A = 0.0;
  double B = 0.0;
  double f = -1.0;
};

Coefficients coefficients(const OtcssParams& params);

/// Blocks u = diag(m2, m1)/2, v = diag(m1, m2)/2, w = diag(m3, -m3)/2.
CovMatrix4 covariance(const OtcssParams& params);

/// (1/pi^2) exp[-m1(q1^2 + p2^2) - m2(p1^2 + q2^2) + 2 m3 (q1 q2 - p1 p2)].
double wigner_closed(const OtcssParams& params, const PhasePoint4& x);
std::vector<double> wigner_closed(const OtcssParams& params, const PhasePoints& xs,
                                  simd::Isa isa = simd::active_isa());

/// 4x4 matrix M acting on (alpha*, alpha, beta*, beta). The Wigner exponent
/// is -v^T M v / 2 and the characteristic-function exponent -v^T M v / 8.
struct ComplexFormMatrix {
  Eigen::Matrix4cd entries;
};

ComplexFormMatrix complex_form_matrix(const OtcssParams& params);

/// Basis change with (q1, p1, q2, p2) = (alpha*, alpha, beta*, beta) N.
Eigen::Matrix4cd quadrature_to_complex_basis();

/// Characteristic function exp[-v^T M v / 8], v = (alpha*, alpha, beta*, beta).
double cf_closed(const OtcssParams& params, const PhasePoint4& x);
std::vector<double> cf_closed(const OtcssParams& params, const PhasePoints& xs,
                              simd::Isa isa = simd::active_isa());

/// Variances of x1 = (Q1 + Q2)/2 and x2 = (P1 + P2)/2.
struct QuadratureVariances {
  double x1 = 0.25;
  double x2 = 0.25;
};

QuadratureVariances variances(const OtcssParams& params);

/// True iff 0 < tanh(lambda) < 1/(1 + cosh(gamma)), the regime where x2 is
/// squeezed below and x1 anti-squeezed above the two-mode squeezed vacuum of
/// the same lambda. Throws UndefinedCondition for lambda == 0.
bool enhanced_squeezing(const OtcssParams& params);

/// Heisenberg action V^-1 (Q1, Q2) V = q_matrix (Q1, Q2) and likewise for P.
struct QuadTransform {
  Eigen::Matrix2d q_matrix;
  Eigen::Matrix2d p_matrix;
};

QuadTransform heisenberg_transform(const OtcssParams& params);

/// Covariance obtained by pushing the vacuum through `t`.
CovMatrix4 transform_vacuum(const QuadTransform& t);

/// Amplitudes of (2/sqrt L) exp[A(b^2dag - a^2dag) + B a^dag b^dag]|00> for
/// photon numbers up to `cutoff`. The three exponentials commute and are
/// expanded as independent power series. Throws CutoffTooSmall if more than
/// 1e-6 of the norm lies beyond the cutoff.
FockState2 fock_amplitudes(const OtcssParams& params, int cutoff);

}  // namespace otcss
