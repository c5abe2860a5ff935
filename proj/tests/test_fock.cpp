#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "doctest.h"
#include "otcss/error.hpp"
#include "otcss/fock.hpp"
#include "otcss/model.hpp"

using namespace otcss;

namespace {

using cd = std::complex<double>;

constexpr double kInvPi2 = 1.0 / (std::numbers::pi * std::numbers::pi);

Eigen::MatrixXcd dense(const fock::TruncatedOperator& op) { return Eigen::MatrixXcd(op.matrix); }

// sech(l) sum_n (sign tanh l)^n |n, n>.
FockState2 tsvs_state(double l, double sign, int cutoff) {
  FockState2 s;
  s.cutoff = cutoff;
  s.amplitudes = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) s.amplitudes(n, n) = std::pow(sign * std::tanh(l), n) / std::cosh(l);
  s.norm_deficit = std::max(0.0, 1.0 - s.norm_squared());
  return s;
}

}  // namespace

TEST_CASE("truncated operators") {
  const int n = 6;
  for (auto q : {fock::Quadrature::q1, fock::Quadrature::p1, fock::Quadrature::q2, fock::Quadrature::p2}) {
    const auto op = fock::quadrature_operator(q, n);
    CHECK(op.cutoff == n);
    const Eigen::MatrixXcd m = dense(op);
    CHECK(m.rows() == (n + 1) * (n + 1));
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(fock::quadrature_operator(fock::Quadrature::q1, n).label == "Q1");

  const Eigen::MatrixXcd parity = dense(fock::parity_operator(n));
  CHECK((parity - Eigen::MatrixXcd(parity.diagonal().asDiagonal())).norm() == 0.0);
  for (int i = 0; i < parity.rows(); ++i) CHECK(std::abs(std::abs(parity(i, i)) - 1.0) == 0.0);
  CHECK(parity(1, 1) == cd(-1.0));  // |0, 1>
  CHECK(parity(n + 2, n + 2) == cd(1.0));  // |1, 1>

  const Eigen::MatrixXcd g = dense(fock::generator_operator(OtcssParams(0.4, 0.3), n));
  CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  // -iG is real and antisymmetric.
  const Eigen::MatrixXcd k = cd(0.0, -1.0) * g;
  CHECK(k.imag().cwiseAbs().maxCoeff() < 1e-15);
  CHECK((k.real() + k.real().transpose()).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::MatrixXcd d = dense(fock::displacement_operator(cd(0.3, 0.2), cd(-0.1, 0.4), n));
  CHECK((d.adjoint() * d - Eigen::MatrixXcd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-mode displacement of the vacuum is a coherent state") {
  const cd alpha(0.4, -0.3);
  const Eigen::MatrixXcd d = fock::single_mode_displacement(alpha, 40);
  double fact = 1.0;
  for (int n = 0; n <= 15; ++n) {
    if (n > 0) fact *= n;
    const cd expected = std::exp(-std::norm(alpha) / 2) * std::pow(alpha, n) / std::sqrt(fact);
    CHECK(std::abs(d(n, 0) - expected) < 1e-12);
  }
}

TEST_CASE("exponential construction") {
  const FockState2 vac = fock::build_state_exponential(OtcssParams(0.0, 1.0), 10);
  CHECK(vac.amplitudes(0, 0) == cd(1.0));
  CHECK(vac.amplitudes.cwiseAbs().sum() == 1.0);

  // At gamma = 0 the generator produces the two-mode squeezed vacuum with
  // +tanh(lambda) amplitudes. The exp[lambda(a1 a2 - a1^dag a2^dag)]
  // convention has -tanh(lambda), i.e. lambda -> -lambda, and overlaps with
  // it only by sech(2 lambda).
  const FockState2 t = fock::build_state_exponential(OtcssParams(0.5, 0.0), 40);
  CHECK(std::abs(fock::state_overlap(t, tsvs_state(0.5, 1.0, 40))) >= 1.0 - 1e-8);
  CHECK(std::abs(std::abs(fock::state_overlap(t, tsvs_state(0.5, -1.0, 40))) - 1.0 / std::cosh(1.0)) < 1e-10);

  const FockState2 e = fock::build_state_exponential(OtcssParams(0.5, 1.0), 30);
  const FockState2 s = fock_amplitudes(OtcssParams(0.5, 1.0), 30);
  CHECK(std::abs(fock::state_overlap(e, s)) >= 1.0 - 1e-8);
  CHECK(std::abs(e.norm_squared() + e.norm_deficit - 1.0) < 1e-12);

  CHECK_THROWS_AS(fock::build_state_exponential(OtcssParams(0.5, 1.0), 9), InvalidArgument);
  CHECK_THROWS_AS(fock::build_state_exponential(OtcssParams(1.5, 1.5), 20), CutoffTooSmall);
}

TEST_CASE("the two constructions agree across a parameter grid") {
  for (double l : {0.1, 0.3, 0.5}) {
    for (double g : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const OtcssParams p(l, g);
      const auto e = fock::build_state_exponential(p, 40);
      const auto s = fock_amplitudes(p, 40);
      CHECK(std::abs(fock::state_overlap(e, s)) >= 1.0 - 1e-8);
      CHECK(fock::normalized_overlap(e, s) >= 1.0 - 1e-12);
      // Same sign, not just the same ray.
      CHECK(fock::state_overlap(e, s).real() > 0.0);
      // Total photon parity is conserved: only m = n (mod 2) is populated.
      for (int m = 0; m <= 40; ++m)
        for (int n = (m + 1) % 2; n <= 40; n += 2) CHECK(std::abs(e.amplitudes(m, n)) < 1e-15);
    }
  }
}

TEST_CASE("numeric moments") {
  const FockState2 vac = fock::vacuum_state(10);
  CHECK((fock::covariance_numeric(vac).matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const OtcssParams p(0.3, 0.7);
  const FockState2 s = fock::build_state_exponential(p, 40);
  CHECK(fock::first_moments(s).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::Matrix4d num = fock::covariance_numeric(s).matrix();
  CHECK((num - covariance(p).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  // Second moments follow the Heisenberg transform applied to the vacuum.
  CHECK((num - transform_vacuum(heisenberg_transform(p)).matrix()).cwiseAbs().maxCoeff() < 1e-8);

  const FockState2 t = fock::build_state_exponential(OtcssParams(0.5, 0.0), 40);
  const Eigen::Matrix4d tn = fock::covariance_numeric(t).matrix();
  CHECK(std::abs(tn(0, 1)) < 1e-12);
  CHECK(std::abs(tn(0, 3)) < 1e-12);
  CHECK(std::abs(tn(0, 0) - std::cosh(1.0) / 2) < 1e-8);
  CHECK(std::abs(tn(0, 2) - std::sinh(1.0) / 2) < 1e-8);
  CHECK(std::abs(tn(1, 3) + std::sinh(1.0) / 2) < 1e-8);

  FockState2 lossy = s;
  lossy.norm_deficit = 1e-7;
  CHECK_THROWS_AS(fock::covariance_numeric(lossy), CutoffTooSmall);
  CHECK_THROWS_AS(fock::log_negativity_numeric(lossy), CutoffTooSmall);
}

TEST_CASE("numeric wigner and characteristic function") {
  const FockState2 vac = fock::vacuum_state(20);
  CHECK(std::abs(fock::wigner_numeric(vac, PhasePoint4{}) - kInvPi2) < 1e-15);
  CHECK(std::abs(fock::cf_numeric(vac, PhasePoint4{}) - 1.0) < 1e-15);

  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> rad(0.0, 0.5), ang(0.0, 2 * std::numbers::pi);
  for (auto [l, g] : {std::pair{0.4, 0.8}, std::pair{0.6, -1.0}, std::pair{0.5, 0.0}}) {
    const OtcssParams p(l, g);
    const FockState2 s = fock::build_state_exponential(p, 40);
    CHECK(std::abs(fock::wigner_numeric(s, PhasePoint4{}) - kInvPi2) < 1e-8);
    CHECK(std::abs(fock::cf_numeric(s, PhasePoint4{}) - 1.0) < 1e-8);
    for (int i = 0; i < 5; ++i) {
      const PhasePoint4 x =
          PhasePoint4::from_complex(std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)));
      CHECK(std::abs(fock::wigner_numeric(s, x) - wigner_closed(p, x)) < 1e-6);
      const cd cf = fock::cf_numeric(s, x);
      CHECK(std::abs(cf - cf_closed(p, x)) < 1e-6);
    }
  }
  CHECK_THROWS_AS(fock::wigner_numeric(vac, PhasePoint4::from_complex(6.0, 0.0)), DisplacementTooLarge);
  CHECK_THROWS_AS(fock::cf_numeric(vac, PhasePoint4::from_complex(0.0, cd(0.0, 5.5))), DisplacementTooLarge);
}

TEST_CASE("numeric log negativity") {
  CHECK(std::abs(fock::log_negativity_numeric(fock::vacuum_state(10))) < 1e-15);

  const FockState2 t = fock::build_state_exponential(OtcssParams(0.5, 0.0), 40);
  CHECK(std::abs(fock::log_negativity_numeric(t) - 1.0) < 1e-4);

  const FockState2 s = fock::build_state_exponential(OtcssParams(0.5, 1.0), 40);
  const double en = fock::log_negativity_numeric(s);
  CHECK(std::abs(en - std::asinh(coefficients(OtcssParams(0.5, 1.0)).m3)) < 1e-3);

  // For a pure state the trace norm equals (sum of Schmidt coefficients)^2.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.amplitudes);
  const double schmidt = svd.singularValues().sum();
  CHECK(std::abs(en - 2.0 * std::log(schmidt)) < 1e-9);
}

TEST_CASE("oracle quantities converge with the cutoff") {
  const OtcssParams p(0.4, 0.6);
  const FockState2 a = fock::build_state_exponential(p, 30);
  const FockState2 b = fock::build_state_exponential(p, 40);
  CHECK((fock::covariance_numeric(a).matrix() - fock::covariance_numeric(b).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  const PhasePoint4 x = PhasePoint4::from_complex(cd(0.2, 0.1), cd(-0.3, 0.2));
  CHECK(std::abs(fock::wigner_numeric(a, x) - fock::wigner_numeric(b, x)) < 1e-8);
  CHECK(std::abs(fock::cf_numeric(a, x) - fock::cf_numeric(b, x)) < 1e-8);
  CHECK(std::abs(fock::state_overlap(a, b)) > 1.0 - 1e-8);
}
