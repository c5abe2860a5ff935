#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "otcss/bell.hpp"
#include "otcss/error.hpp"
#include "otcss/fock.hpp"

using namespace otcss;

namespace {

constexpr double kPi = std::numbers::pi;

// phi = 0, theta = pi, written out with the hyperbolic functions directly.
double bell_phase_locked(double l, double g, double j) {
  const double c2 = std::cosh(l) * std::cosh(l), s2 = std::sinh(l) * std::sinh(l);
  return 1.0 + std::exp(-2 * j * (c2 + std::exp(2 * g) * s2)) +
         std::exp(-2 * j * (c2 + std::exp(-2 * g) * s2)) -
         std::exp(-4 * j * (c2 + std::cosh(2 * g) * s2) - 4 * j * std::cosh(g) * std::sinh(2 * l));
}

}  // namespace

TEST_CASE("bell setting normalisation") {
  const BellSetting s(0.1, -kPi / 2, 5 * kPi);
  CHECK(s.theta() == doctest::Approx(3 * kPi / 2));
  CHECK(s.phi() == doctest::Approx(kPi));
  CHECK(s.theta() >= 0.0);
  CHECK(s.theta() < 2 * kPi);
  CHECK(BellSetting(0.0, 2 * kPi, 0.0).theta() == 0.0);
  CHECK_THROWS_AS(BellSetting(-0.01, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(BellSetting(0.1, NAN, 0.0), InvalidArgument);
  CHECK(std::abs(s.alpha()) == doctest::Approx(std::sqrt(0.1)));
}

TEST_CASE("bell value") {
  CHECK(BellValue::of(2.1).violates);
  CHECK_FALSE(BellValue::of(2.0).violates);
  CHECK(BellValue::of(-2.5).violates);
}

TEST_CASE("parity expectation") {
  const OtcssParams p(0.7, -0.4);
  CHECK(parity_expectation(p, PhasePoint4{}) == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(71);
  std::normal_distribution<double> nx(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double v = parity_expectation(p, {nx(rng), nx(rng), nx(rng), nx(rng)});
    CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("closed form against the four-point wigner combination") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> lam(0.0, 1.5), gam(-2.0, 2.0), jd(0.0, 1.0), ang(0.0, 2 * kPi);
  std::vector<BellSetting> settings;
  for (int i = 0; i < 500; ++i) {
    const OtcssParams p(lam(rng), gam(rng));
    const BellSetting s(jd(rng), ang(rng), ang(rng));
    CHECK(std::abs(bell_function(p, s).value - bell_from_wigner(p, s).value) < 1e-12);
  }
  const OtcssParams p(0.6, 0.9);
  for (int i = 0; i < 257; ++i) settings.emplace_back(jd(rng), ang(rng), ang(rng));
  const auto closed = bell_function_batch(p, settings);
  const auto wig = bell_from_wigner_batch(p, settings);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const double ref = bell_function(p, settings[i]).value;
    CHECK(std::abs(closed[i] - ref) < 1e-12);
    CHECK(std::abs(wig[i] - ref) < 1e-12);
  }
}

TEST_CASE("reductions") {
  for (double j : {0.0, 0.01, 0.3, 1.7}) {
    const double v = bell_function(OtcssParams(0.0, 0.8), BellSetting(j, 1.0, 2.0)).value;
    CHECK(std::abs(v - (1 + 2 * std::exp(-2 * j) - std::exp(-4 * j))) < 1e-15);
    CHECK(v <= 2.0);
  }
  CHECK(std::abs(bell_from_wigner(OtcssParams(0.0, 0.0), BellSetting(0.1, 0.3, 0.2)).value - 1.96714146012032441) < 1e-12);

  const auto b = bell_function(OtcssParams(1.0, 0.0), BellSetting(0.01, kPi, 0.0));
  CHECK(std::abs(b.value - 2.11092135219132204) < 1e-12);
  CHECK(b.violates);

  for (double l : {0.1, 0.5, 1.2})
    for (double g : {-1.0, 0.0, 1.5})
      for (double j : {0.0025, 0.05, 0.4})
        CHECK(std::abs(bell_function(OtcssParams(l, g), BellSetting(j, kPi, 0.0)).value -
                       bell_phase_locked(l, g, j)) < 1e-12);
}

TEST_CASE("symmetry under mode exchange") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> lam(0.0, 1.5), gam(-2.0, 2.0), jd(0.0, 1.0), ang(0.0, 2 * kPi);
  for (int i = 0; i < 300; ++i) {
    const double l = lam(rng), g = gam(rng), j = jd(rng), t = ang(rng), f = ang(rng);
    const double a = bell_function(OtcssParams(l, g), BellSetting(j, t, f)).value;
    const double b = bell_function(OtcssParams(l, -g), BellSetting(j, f + kPi, t - kPi)).value;
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("counter-rotating the angles only moves the single-displacement terms") {
  const OtcssParams p(0.5, 0.7);
  const Coefficients c = coefficients(p);
  for (double d : {-1.0, -0.3, 0.2, 0.9, 2.5}) {
    const double t = 2.0, f = 0.4, j = 0.2;
    const BellSetting a(j, t, f), b(j, t + d, f - d);
    const auto w2 = [&](double phi) { return std::exp(-2 * j * (c.m1 * std::cos(phi) * std::cos(phi) + c.m2 * std::sin(phi) * std::sin(phi))); };
    const auto w3 = [&](double th) { return std::exp(-2 * j * (c.m2 * std::cos(th) * std::cos(th) + c.m1 * std::sin(th) * std::sin(th))); };
    const double cross = std::exp(4 * j * c.m3 * std::cos(t + f));
    const double expected = bell_function(p, a).value - (w2(f) + w3(t) - w2(f) * w3(t) * cross) +
                            (w2(f - d) + w3(t + d) - w2(f - d) * w3(t + d) * cross);
    CHECK(std::abs(bell_function(p, b).value - expected) < 1e-12);
  }
}

TEST_CASE("product state never violates") {
  const OtcssParams p(0.0, 1.3);
  double worst = -1e9;
  for (int a = 0; a <= 40; ++a)
    for (int b = 0; b <= 40; ++b)
      for (int k = 0; k <= 40; ++k) {
        const double v = bell_function(p, BellSetting(0.05 * k, 2 * kPi * a / 40, 2 * kPi * b / 40)).value;
        worst = std::max(worst, std::abs(v));
      }
  CHECK(worst <= 2.0);
}

TEST_CASE("quantum bound") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> lam(0.0, 3.0), gam(-3.0, 3.0), jd(0.0, 2.0), ang(0.0, 2 * kPi);
  for (int i = 0; i < 2000; ++i) {
    const double v = bell_function(OtcssParams(lam(rng), gam(rng)), BellSetting(jd(rng), ang(rng), ang(rng))).value;
    CHECK(std::abs(v) <= 2 * std::numbers::sqrt2 + 1e-9);
  }
}

TEST_CASE("closed form against the Fock oracle") {
  const OtcssParams p(0.4, 0.8);
  const FockState2 s = fock::build_state_exponential(p, 40);
  const double pi2 = kPi * kPi;
  for (double t : {0.0, 1.0, kPi}) {
    for (double f : {0.0, 2.5}) {
      const BellSetting set(0.05, t, f);
      const auto w = [&](std::complex<double> a, std::complex<double> b) {
        return pi2 * fock::wigner_numeric(s, PhasePoint4::from_complex(a, b));
      };
      const double num = w(0.0, 0.0) + w(set.alpha(), 0.0) + w(0.0, set.beta()) - w(set.alpha(), set.beta());
      CHECK(std::abs(num - bell_from_wigner(p, set).value) < 1e-6);
    }
  }
}

TEST_CASE("maximisation at fixed J") {
  const OtcssParams p(0.5, 1.0);
  const auto best = maximize_bell(p, 0.01);
  CHECK(best.value.value >= best.grid_value);
  CHECK(best.setting.j() == 0.01);
  // The maximum sits on the anti-aligned line cos(theta + phi) = -1 with the
  // same value as (theta, phi) = (pi, 0).
  const double at_pi = bell_function(p, BellSetting(0.01, kPi, 0.0)).value;
  CHECK(std::abs(best.value.value - at_pi) < 1e-10);
  CHECK(std::cos(best.setting.theta() + best.setting.phi()) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(bell_function(p, best.setting).value - best.value.value) < 1e-12);

  // Deterministic.
  const auto again = maximize_bell(p, 0.01);
  CHECK(again.value.value == best.value.value);
  CHECK(again.setting.theta() == best.setting.theta());
  CHECK(again.setting.phi() == best.setting.phi());
}

TEST_CASE("maximisation with free J") {
  const auto vac = maximize_bell(OtcssParams(0.0, 0.0));
  CHECK(vac.value.value <= 2.0);
  CHECK(vac.value.value > 2.0 - 1e-6);
  CHECK(vac.setting.j() < 1e-3);

  const auto strong = maximize_bell(OtcssParams(1.0, 2.0), 0.01);
  CHECK(strong.value.value >= strong.grid_value);

  const auto free_j = maximize_bell(OtcssParams(1.0, 0.0));
  CHECK(free_j.value.value >= free_j.grid_value);
  CHECK(free_j.value.violates);
  CHECK(free_j.value.value <= 2 * std::numbers::sqrt2);
}
