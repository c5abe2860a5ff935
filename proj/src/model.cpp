#include "otcss/model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "otcss/error.hpp"

namespace otcss {

namespace {

constexpr double kInvPi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
constexpr double kMaxSeriesDeficit = 1e-6;

// log|x|^power with the 0^0 = 1 convention; returns -inf for 0^k, k > 0.
double log_power(double x, int power) {
  if (power == 0) return 0.0;
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return power * std::log(std::abs(x));
}

int sign_power(double x, int power) { return (x < 0.0 && power % 2 == 1) ? -1 : 1; }

}  // namespace

OtcssParams::OtcssParams(double lambda, double gamma) : lambda_(lambda), gamma_(gamma) {
  if (!std::isfinite(lambda) || !std::isfinite(gamma)) {
    throw InvalidArgument("squeeze parameters must be finite");
  }
  if (lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
  if (lambda > kMaxLambda || std::abs(gamma) > kMaxAbsGamma) {
    throw InvalidArgument("squeeze parameters outside the envelope lambda <= 5, |gamma| <= 5 (lambda=" +
                          std::to_string(lambda) + ", gamma=" + std::to_string(gamma) + ")");
  }
}

double OtcssParams::lambda1() const { return lambda_ * std::exp(gamma_); }
double OtcssParams::lambda2() const { return lambda_ * std::exp(-gamma_); }

Coefficients coefficients(const OtcssParams& params) {
  const double l = params.lambda();
  const double g = params.gamma();
  const double ch = std::cosh(l);
  const double sh = std::sinh(l);
  const double ch2 = ch * ch;
  const double sh2 = sh * sh;
  const double th = std::tanh(l);
  const double sinh_g = std::sinh(g);

  Coefficients c;
  c.m1 = ch2 + std::exp(2.0 * g) * sh2;
  c.m2 = ch2 + std::exp(-2.0 * g) * sh2;
  c.m3 = std::cosh(g) * std::sinh(2.0 * l);
  c.L = 4.0 * (1.0 + sinh_g * sinh_g * th * th) * ch2;
  c.A = sh2 * std::sinh(2.0 * g) / c.L;
  c.B = 2.0 * std::sinh(2.0 * l) * std::cosh(g) / c.L;
  c.f = std::cosh(g) * std::sinh(2.0 * l) - ch2 - std::cosh(2.0 * g) * sh2;
  return c;
}

CovMatrix4 covariance(const OtcssParams& params) {
  const Coefficients c = coefficients(params);
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 0) = c.m2;
  s(1, 1) = c.m1;
  s(2, 2) = c.m1;
  s(3, 3) = c.m2;
  s(0, 2) = s(2, 0) = c.m3;
  s(1, 3) = s(3, 1) = -c.m3;
  return CovMatrix4(0.5 * s);
}

double wigner_closed(const OtcssParams& params, const PhasePoint4& x) {
  const Coefficients c = coefficients(params);
  const double exponent = -c.m1 * (x.q1 * x.q1 + x.p2 * x.p2) - c.m2 * (x.p1 * x.p1 + x.q2 * x.q2) +
                          2.0 * (x.q1 * x.q2 - x.p1 * x.p2) * c.m3;
  return kInvPi2 * std::exp(exponent);
}

std::vector<double> wigner_closed(const OtcssParams& params, const PhasePoints& xs,
                                  simd::Isa isa) {
  const Coefficients c = coefficients(params);
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 0) = c.m1;
  s(1, 1) = c.m2;
  s(2, 2) = c.m2;
  s(3, 3) = c.m1;
  s(0, 2) = s(2, 0) = -c.m3;
  s(1, 3) = s(3, 1) = c.m3;
  std::vector<double> out(xs.size());
  simd::gaussian_form(isa, to_form(2.0 * s), kInvPi2, xs.view(), out);
  return out;
}

ComplexFormMatrix complex_form_matrix(const OtcssParams& params) {
  const Coefficients c = coefficients(params);
  const double d = c.m1 - c.m2;
  const double t = c.m1 + c.m2;
  const double x = -2.0 * c.m3;
  Eigen::Matrix4d m;
  // clang-format off
  m <<  d,  t,  x, 0.0,
        t,  d, 0.0,  x,
        x, 0.0, -d,  t,
       0.0,  x,  t, -d;
  // clang-format on
  return {m.cast<std::complex<double>>()};
}

Eigen::Matrix4cd quadrature_to_complex_basis() {
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  Eigen::Matrix4cd n = Eigen::Matrix4cd::Zero();
  n(0, 0) = 1.0;
  n(0, 1) = i;
  n(1, 0) = 1.0;
  n(1, 1) = -i;
  n(2, 2) = 1.0;
  n(2, 3) = i;
  n(3, 2) = 1.0;
  n(3, 3) = -i;
  return n / std::numbers::sqrt2;
}

double cf_closed(const OtcssParams& params, const PhasePoint4& x) {
  const Eigen::Matrix4cd& m = complex_form_matrix(params).entries;
  const std::complex<double> a = x.alpha();
  const std::complex<double> b = x.beta();
  const Eigen::Vector4cd v(std::conj(a), a, std::conj(b), b);
  const std::complex<double> quad = v.transpose() * m * v;
  return std::exp(-quad.real() / 8.0);
}

std::vector<double> cf_closed(const OtcssParams& params, const PhasePoints& xs, simd::Isa isa) {
  // v = x N^{-1}, so v^T M v / 8 = x^T (N^{-1} M N^{-T} / 4) x / 2.
  const Eigen::Matrix4cd n_inv = quadrature_to_complex_basis().inverse();
  const Eigen::Matrix4cd form =
      n_inv * complex_form_matrix(params).entries * n_inv.transpose() / 4.0;
  Eigen::Matrix4d real_form = form.real();
  real_form = 0.5 * (real_form + real_form.transpose()).eval();
  std::vector<double> out(xs.size());
  simd::gaussian_form(isa, to_form(real_form), 1.0, xs.view(), out);
  return out;
}

QuadratureVariances variances(const OtcssParams& params) {
  const double l = params.lambda();
  const double g = params.gamma();
  const double sh = std::sinh(l);
  const double sg = std::sinh(g);
  const double common = std::cosh(2.0 * l) + 2.0 * sh * sh * sg * sg;
  const double cross = std::sinh(2.0 * l) * std::cosh(g);
  return {0.25 * (common + cross), 0.25 * (common - cross)};
}

bool enhanced_squeezing(const OtcssParams& params) {
  if (params.lambda() == 0.0) {
    throw UndefinedCondition("squeezing-enhancement condition requires lambda > 0");
  }
  return std::tanh(params.lambda()) < 1.0 / (1.0 + std::cosh(params.gamma()));
}

QuadTransform heisenberg_transform(const OtcssParams& params) {
  const double ch = std::cosh(params.lambda());
  const double sh = std::sinh(params.lambda());
  const double eg = std::exp(params.gamma());
  QuadTransform t;
  t.q_matrix << ch, sh / eg, eg * sh, ch;
  t.p_matrix << ch, -eg * sh, -sh / eg, ch;
  return t;
}

CovMatrix4 transform_vacuum(const QuadTransform& t) {
  const Eigen::Matrix2d cq = 0.5 * t.q_matrix * t.q_matrix.transpose();
  const Eigen::Matrix2d cp = 0.5 * t.p_matrix * t.p_matrix.transpose();
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  // (q1, p1, q2, p2) <- q-sector (0, 2), p-sector (1, 3)
  s(0, 0) = cq(0, 0);
  s(0, 2) = s(2, 0) = cq(0, 1);
  s(2, 2) = cq(1, 1);
  s(1, 1) = cp(0, 0);
  s(1, 3) = s(3, 1) = cp(0, 1);
  s(3, 3) = cp(1, 1);
  return CovMatrix4(s);
}

FockState2 fock_amplitudes(const OtcssParams& params, int cutoff) {
  if (cutoff < 2) throw InvalidArgument("Fock cutoff must be at least 2");
  const Coefficients c = coefficients(params);
  const int dim = cutoff + 1;

  std::vector<double> log_fact(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) log_fact[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
  const auto lf = [&](int k) { return log_fact[static_cast<std::size_t>(k)]; };

  // a^dag^(2i) b^dag^(2j) (a^dag b^dag)^k |00> lands on |2i + k, 2j + k>.
  FockState2 state;
  state.cutoff = cutoff;
  state.amplitudes = Eigen::MatrixXcd::Zero(dim, dim);
  const double prefactor = 2.0 / std::sqrt(c.L);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      if ((m - n) % 2 != 0) continue;
      double sum = 0.0;
      for (int k = m % 2; k <= std::min(m, n); k += 2) {
        const int i = (m - k) / 2;
        const int j = (n - k) / 2;
        const double log_mag = log_power(c.A, i + j) + log_power(c.B, k) - lf(i) - lf(j) - lf(k) +
                               0.5 * (lf(m) + lf(n));
        if (!std::isfinite(log_mag)) continue;
        const int sign = (i % 2 == 1 ? -1 : 1) * sign_power(c.A, i + j) * sign_power(c.B, k);
        sum += sign * std::exp(log_mag);
      }
      state.amplitudes(m, n) = prefactor * sum;
    }
  }

  state.norm_deficit = std::max(0.0, 1.0 - state.norm_squared());
  if (state.norm_deficit > kMaxSeriesDeficit) throw CutoffTooSmall(cutoff, state.norm_deficit);
  return state;
}

}  // namespace otcss
