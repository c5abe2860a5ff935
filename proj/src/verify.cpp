#include "otcss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "otcss/bell.hpp"
#include "otcss/error.hpp"
#include "otcss/fock.hpp"
#include "otcss/model.hpp"

namespace otcss {

namespace {

constexpr double kOverlapTol = 1e-8;
constexpr double kCovarianceTol = 1e-8;
constexpr double kWignerTol = 1e-6;
constexpr double kCfTol = 1e-6;
constexpr double kNegativityTol = 1e-3;
constexpr double kBellTol = 1e-6;
constexpr double kMaxDisplacement = 0.5;

enum Check { overlap, cov, wigner, cf, negativity, bell, count };

void record(CheckResult& r, double deviation) {
  r.max_deviation = std::max(r.max_deviation, deviation);
  if (!(deviation <= r.tolerance)) r.passed = false;
}

void record_error(CheckResult& r, const std::string& what) {
  r.passed = false;
  if (r.error.empty()) r.error = what;
}

std::complex<double> random_amplitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.0, kMaxDisplacement);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius(rng), angle(rng));
}

double bell_numeric(const FockState2& state, const BellSetting& s) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const auto w = [&](std::complex<double> a, std::complex<double> b) {
    return pi2 * fock::wigner_numeric(state, PhasePoint4::from_complex(a, b));
  };
  return w(0.0, 0.0) + w(s.alpha(), 0.0) + w(0.0, s.beta()) - w(s.alpha(), s.beta());
}

}  // namespace

std::vector<std::pair<double, double>> verify_grid(const std::string& preset) {
  std::vector<double> lambdas, gammas;
  if (preset == "coarse") {
    lambdas = {0.2, 0.5};
    gammas = {-0.8, 0.0, 0.8};
  } else if (preset == "fine") {
    lambdas = {0.1, 0.3, 0.5};
    gammas = {-0.8, -0.4, 0.0, 0.4, 0.8};
  } else {
    throw InvalidArgument("unknown grid preset '" + preset + "'");
  }
  std::vector<std::pair<double, double>> out;
  for (double l : lambdas)
    for (double g : gammas) out.emplace_back(l, g);
  return out;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results(count);
  results[overlap] = {"state overlap", 0.0, kOverlapTol, true, {}};
  results[cov] = {"covariance", 0.0, kCovarianceTol, true, {}};
  results[wigner] = {"wigner", 0.0, kWignerTol, true, {}};
  results[cf] = {"characteristic function", 0.0, kCfTol, true, {}};
  results[negativity] = {"log negativity", 0.0, kNegativityTol, true, {}};
  results[bell] = {"bell", 0.0, kBellTol, true, {}};

  // Validate the whole grid before running anything.
  std::vector<OtcssParams> params;
  for (const auto& [l, g] : options.points) params.emplace_back(l, g);

  std::mt19937_64 rng(20100514);
  for (const OtcssParams& p : params) {
    FockState2 series, expo;
    try {
      series = fock_amplitudes(p, options.cutoff);
      expo = fock::build_state_exponential(p, options.cutoff);
    } catch (const CutoffTooSmall& e) {
      for (auto& r : results) record_error(r, e.what());
      continue;
    }
    record(results[overlap], 1.0 - std::abs(fock::state_overlap(series, expo)));

    try {
      const Eigen::Matrix4d diff = fock::covariance_numeric(expo).matrix() - covariance(p).matrix();
      record(results[cov], diff.cwiseAbs().maxCoeff());
    } catch (const CutoffTooSmall& e) {
      record_error(results[cov], e.what());
    }
    try {
      record(results[negativity],
             std::abs(fock::log_negativity_numeric(expo) - log_negativity(covariance(p))));
    } catch (const CutoffTooSmall& e) {
      record_error(results[negativity], e.what());
    }

    for (int k = 0; k < options.samples; ++k) {
      const PhasePoint4 x = PhasePoint4::from_complex(random_amplitude(rng), random_amplitude(rng));
      record(results[wigner], std::abs(fock::wigner_numeric(expo, x) - wigner_closed(p, x)));
      record(results[cf], std::abs(fock::cf_numeric(expo, x) - cf_closed(p, x)));
    }

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> jdist(0.0, kMaxDisplacement * kMaxDisplacement);
    for (int k = 0; k < 2; ++k) {
      const BellSetting s(jdist(rng), angle(rng), angle(rng));
      record(results[bell], std::abs(bell_numeric(expo, s) - bell_function(p, s).value));
    }
  }
  return results;
}

}  // namespace otcss
