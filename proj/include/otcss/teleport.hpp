#pragma once

// Unit-gain continuous-variable teleportation in the characteristic-function
// picture: chi_out(eta) = chi_in(eta) chi_E(eta*, eta), and the fidelity
// F = (1/pi) int d^2 eta |chi_in(eta)|^2 chi_E(-eta*, -eta).

#include <complex>
#include <variant>

#include "otcss/model.hpp"

namespace otcss {

struct Coherent {
  std::complex<double> amplitude;
};

struct SqueezedVacuum {
  double r = 0.0;
};

/// Input state to be teleported; |beta| <= 10 and |r| <= 3.
class InputState {
 public:
  static InputState coherent(std::complex<double> beta);
  static InputState squeezed_vacuum(double r);

  const std::variant<Coherent, SqueezedVacuum>& kind() const noexcept { return kind_; }

 private:
  explicit InputState(std::variant<Coherent, SqueezedVacuum> k) : kind_(k) {}
  std::variant<Coherent, SqueezedVacuum> kind_;
};

/// Value in (0, 1 + 1e-9]; construction throws otherwise.
class Fidelity {
 public:
  explicit Fidelity(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

std::complex<double> cf_input(const InputState& s, std::complex<double> eta);

/// Two-mode resource characteristic function with (first, second) bound to
/// modes (1, 2).
double entangled_cf(const OtcssParams& params, std::complex<double> first,
                    std::complex<double> second);

std::complex<double> output_cf(const InputState& s, const OtcssParams& params,
                               std::complex<double> eta);

/// Tensor-product trapezoid rule over Re eta and Im eta. Decay rates along
/// each axis are probed from the integrand; each axis gets radius
/// max(6, 6/sqrt(k)) and a step small enough for double-precision accuracy.
/// Throws QuadratureDomainError if the integrand does not decay or its tail
/// exceeds 1e-12 of the peak.
Fidelity fidelity_quadrature(const InputState& s, const OtcssParams& params);

/// 1/(1 - f).
Fidelity fidelity_coherent_closed(const OtcssParams& params);

/// 1/sqrt(f^2 - 2 f cosh 2r + 1); requires |r| <= 3.
Fidelity fidelity_squeezed_closed(const OtcssParams& params, double r);

/// F(r) - F(0) at the same (lambda, gamma).
double fidelity_difference(const OtcssParams& params, double r);

/// F(lambda, gamma, r) - F(lambda, 0, r): the gain of this resource over the
/// two-mode squeezed vacuum at the same lambda.
double fidelity_gain_over_tsvs(const OtcssParams& params, double r);

}  // namespace otcss
