#include "otcss/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "otcss/error.hpp"
#include "otcss/simd.hpp"

namespace otcss {

namespace {

using cd = std::complex<double>;

constexpr double kMaxCoherent = 10.0;
constexpr double kMaxSqueeze = 3.0;
constexpr double kTailTol = 1e-12;

void require_squeeze(double r) {
  if (!std::isfinite(r) || std::abs(r) > kMaxSqueeze) {
    throw InvalidArgument("squeeze r must satisfy |r| <= 3");
  }
}

double integrand(const InputState& s, const OtcssParams& params, cd eta) {
  return std::norm(cf_input(s, eta)) * entangled_cf(params, -std::conj(eta), -eta);
}

// Decay rate k of exp(-k t^2) along `dir`, probed at two radii.
double decay_rate(const InputState& s, const OtcssParams& params, cd dir) {
  const double peak = integrand(s, params, 0.0);
  double k = std::numeric_limits<double>::infinity();
  for (double t : {0.25, 1.0}) {
    const double v = integrand(s, params, t * dir);
    if (!(v > 0.0)) continue;
    k = std::min(k, -std::log(v / peak) / (t * t));
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw QuadratureDomainError("teleportation integrand does not decay");
  }
  return k;
}

struct Axis {
  double h;
  std::vector<double> nodes;
};

Axis make_axis(double k) {
  const double radius = std::max(6.0, 6.0 / std::sqrt(k));
  const double h_max = std::numbers::pi / std::sqrt(37.0 * k);
  const int half = static_cast<int>(std::ceil(radius / h_max));
  Axis a;
  a.h = radius / half;
  a.nodes.reserve(static_cast<std::size_t>(2 * half + 1));
  for (int i = -half; i <= half; ++i) a.nodes.push_back(i * a.h);
  return a;
}

}  // namespace

InputState InputState::coherent(cd beta) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || std::abs(beta) > kMaxCoherent) {
    throw InvalidArgument("coherent amplitude must satisfy |beta| <= 10");
  }
  return InputState(Coherent{beta});
}

InputState InputState::squeezed_vacuum(double r) {
  require_squeeze(r);
  return InputState(SqueezedVacuum{r});
}

Fidelity::Fidelity(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0 + 1e-9)) {
    throw Error("fidelity " + std::to_string(value) + " outside (0, 1]");
  }
}

cd cf_input(const InputState& s, cd eta) {
  const double n2 = std::norm(eta);
  if (const auto* c = std::get_if<Coherent>(&s.kind())) {
    const cd b = c->amplitude;
    return std::exp(-0.5 * n2 + eta * std::conj(b) - std::conj(eta) * b);
  }
  const double r = std::get<SqueezedVacuum>(s.kind()).r;
  const double re_sq = 2.0 * (eta * eta).real();
  return std::exp(-0.5 * n2 * std::cosh(2.0 * r) - 0.25 * re_sq * std::sinh(2.0 * r));
}

double entangled_cf(const OtcssParams& params, cd first, cd second) {
  return cf_closed(params, PhasePoint4::from_complex(first, second));
}

cd output_cf(const InputState& s, const OtcssParams& params, cd eta) {
  return cf_input(s, eta) * entangled_cf(params, std::conj(eta), eta);
}

Fidelity fidelity_quadrature(const InputState& s, const OtcssParams& params) {
  const Axis ax = make_axis(decay_rate(s, params, cd(1.0, 0.0)));
  const Axis ay = make_axis(decay_rate(s, params, cd(0.0, 1.0)));

  const std::size_t nx = ax.nodes.size();
  const std::size_t ny = ay.nodes.size();
  PhasePoints pts(nx * ny);
  std::vector<double> input(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const cd eta(ax.nodes[i], ay.nodes[j]);
      pts.push_back(PhasePoint4::from_complex(-std::conj(eta), -eta));
      input[i * ny + j] = std::norm(cf_input(s, eta));
    }
  }
  const std::vector<double> chi_e = cf_closed(params, pts);

  const double peak = integrand(s, params, 0.0);
  double tail = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) {
        tail = std::max(tail, std::abs(input[i * ny + j] * chi_e[i * ny + j]));
      }
    }
  }
  if (tail > kTailTol * peak) {
    throw QuadratureDomainError("teleportation integrand tail " + std::to_string(tail) +
                                " above tolerance");
  }
  const double sum = simd::dot(input, chi_e);
  return Fidelity(sum * ax.h * ay.h / std::numbers::pi);
}

Fidelity fidelity_coherent_closed(const OtcssParams& params) {
  return Fidelity(1.0 / (1.0 - coefficients(params).f));
}

Fidelity fidelity_squeezed_closed(const OtcssParams& params, double r) {
  require_squeeze(r);
  const double f = coefficients(params).f;
  return Fidelity(1.0 / std::sqrt(f * f - 2.0 * f * std::cosh(2.0 * r) + 1.0));
}

double fidelity_difference(const OtcssParams& params, double r) {
  return fidelity_squeezed_closed(params, r).value() - fidelity_squeezed_closed(params, 0.0).value();
}

double fidelity_gain_over_tsvs(const OtcssParams& params, double r) {
  const OtcssParams tsvs(params.lambda(), 0.0);
  return fidelity_squeezed_closed(params, r).value() - fidelity_squeezed_closed(tsvs, r).value();
}

}  // namespace otcss
