#include "otcss/bell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "otcss/error.hpp"
#include "otcss/parallel.hpp"

namespace otcss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kMinJ = 1e-12;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Exponents of W2, W3 and W4 (pi^2-scaled), as in bell_function.
std::array<double, 3> bell_exponents(const Coefficients& c, double j, double theta, double phi) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double e2 = -2.0 * j * (c.m1 * cp * cp + c.m2 * sp * sp);
  const double e3 = -2.0 * j * (c.m2 * ct * ct + c.m1 * st * st);
  const double e4 = e2 + e3 + 4.0 * j * c.m3 * std::cos(theta + phi);
  return {e2, e3, e4};
}

double bell_raw(const Coefficients& c, double j, double theta, double phi) {
  const auto e = bell_exponents(c, j, theta, phi);
  return 1.0 + std::exp(e[0]) + std::exp(e[1]) - std::exp(e[2]);
}

// Nelder-Mead maximisation of f from a starting point with per-axis steps.
template <std::size_t D, typename F>
std::pair<std::array<double, D>, double> nelder_mead_max(F f, std::array<double, D> start,
                                                         std::array<double, D> step, double tol,
                                                         int max_iter) {
  std::array<std::array<double, D>, D + 1> x;
  std::array<double, D + 1> fx;
  x[0] = start;
  for (std::size_t i = 0; i < D; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= D; ++i) fx[i] = -f(x[i]);

  const auto combine = [](const std::array<double, D>& a, const std::array<double, D>& b, double t) {
    std::array<double, D> out;
    for (std::size_t k = 0; k < D; ++k) out[k] = a[k] + t * (b[k] - a[k]);
    return out;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::array<std::size_t, D + 1> order;
    for (std::size_t i = 0; i <= D; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t best = order[0], worst = order[D], second = order[D - 1];
    if (fx[worst] - fx[best] <= tol) break;

    std::array<double, D> centroid{};
    for (std::size_t i = 0; i <= D; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < D; ++k) centroid[k] += x[i][k] / D;
    }
    const auto xr = combine(centroid, x[worst], -1.0);
    const double fr = -f(xr);
    if (fr < fx[best]) {
      const auto xe = combine(centroid, x[worst], -2.0);
      const double fe = -f(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const auto xc = combine(centroid, outside ? xr : x[worst], 0.5);
    const double fc = -f(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= D; ++i) {
      if (i == best) continue;
      x[i] = combine(x[best], x[i], 0.5);
      fx[i] = -f(x[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= D; ++i) {
    if (fx[i] < fx[best]) best = i;
  }
  return {x[best], -fx[best]};
}

}  // namespace

BellSetting::BellSetting(double j, double theta, double phi) {
  if (!std::isfinite(j) || !std::isfinite(theta) || !std::isfinite(phi)) {
    throw InvalidArgument("Bell setting must be finite");
  }
  if (j < 0.0) throw InvalidArgument("displacement J must be non-negative");
  j_ = j;
  theta_ = wrap_angle(theta);
  phi_ = wrap_angle(phi);
}

std::complex<double> BellSetting::alpha() const { return std::polar(std::sqrt(j_), phi_); }
std::complex<double> BellSetting::beta() const { return std::polar(std::sqrt(j_), theta_); }

BellValue BellValue::of(double b) { return {b, std::abs(b) > 2.0}; }

double parity_expectation(const OtcssParams& params, const PhasePoint4& x) {
  return kPi2 * wigner_closed(params, x);
}

BellValue bell_function(const OtcssParams& params, const BellSetting& s) {
  return BellValue::of(bell_raw(coefficients(params), s.j(), s.theta(), s.phi()));
}

BellValue bell_from_wigner(const OtcssParams& params, const BellSetting& s) {
  const std::complex<double> a = s.alpha();
  const std::complex<double> b = s.beta();
  const double b00 = parity_expectation(params, PhasePoint4{});
  const double b10 = parity_expectation(params, PhasePoint4::from_complex(a, 0.0));
  const double b01 = parity_expectation(params, PhasePoint4::from_complex(0.0, b));
  const double b11 = parity_expectation(params, PhasePoint4::from_complex(a, b));
  return BellValue::of(b00 + b10 + b01 - b11);
}

std::vector<double> bell_function_batch(const OtcssParams& params, std::span<const BellSetting> s,
                                        simd::Isa isa) {
  const Coefficients c = coefficients(params);
  const std::size_t n = s.size();
  std::vector<double> exps(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = bell_exponents(c, s[i].j(), s[i].theta(), s[i].phi());
    exps[i] = e[0];
    exps[n + i] = e[1];
    exps[2 * n + i] = e[2];
  }
  simd::exp_batch(isa, exps, exps);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 + exps[i] + exps[n + i] - exps[2 * n + i];
  return out;
}

std::vector<double> bell_from_wigner_batch(const OtcssParams& params,
                                           std::span<const BellSetting> s, simd::Isa isa) {
  const std::size_t n = s.size();
  PhasePoints pts(4 * n);
  for (const BellSetting& set : s) {
    const std::complex<double> a = set.alpha();
    const std::complex<double> b = set.beta();
    pts.push_back(PhasePoint4{});
    pts.push_back(PhasePoint4::from_complex(a, 0.0));
    pts.push_back(PhasePoint4::from_complex(0.0, b));
    pts.push_back(PhasePoint4::from_complex(a, b));
  }
  const std::vector<double> w = wigner_closed(params, pts, isa);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kPi2 * (w[4 * i] + w[4 * i + 1] + w[4 * i + 2] - w[4 * i + 3]);
  }
  return out;
}

BellOptimum maximize_bell(const OtcssParams& params, std::optional<double> j,
                          const BellSearchOptions& options) {
  if (options.angle_steps < 2 || options.j_steps < 1 || !(options.j_max > 0.0)) {
    throw InvalidArgument("invalid Bell search options");
  }
  if (j && !(*j >= 0.0 && std::isfinite(*j))) throw InvalidArgument("J must be non-negative");
  const Coefficients c = coefficients(params);
  const int na = options.angle_steps;
  const int nj = j ? 1 : options.j_steps;
  const double da = kTwoPi / na;
  const auto j_at = [&](int k) { return j ? *j : options.j_max * (k + 1) / nj; };

  // Best grid cell per J slice, reduced afterwards in index order.
  struct Cell {
    double value;
    int theta;
    int phi;
  };
  std::vector<Cell> slice_best(static_cast<std::size_t>(nj));
  parallel_for(static_cast<std::size_t>(nj), [&](std::size_t k) {
    const double jk = j_at(static_cast<int>(k));
    Cell best{-1e300, 0, 0};
    for (int t = 0; t < na; ++t) {
      for (int p = 0; p < na; ++p) {
        const double v = bell_raw(c, jk, t * da, p * da);
        if (v > best.value) best = {v, t, p};
      }
    }
    slice_best[k] = best;
  });
  int best_k = 0;
  for (int k = 1; k < nj; ++k) {
    if (slice_best[k].value > slice_best[best_k].value) best_k = k;
  }
  const Cell cell = slice_best[best_k];
  const double theta0 = cell.theta * da;
  const double phi0 = cell.phi * da;
  const double j0 = j_at(best_k);

  BellOptimum out;
  out.grid_value = cell.value;
  double theta = theta0, phi = phi0, jj = j0, value = cell.value;
  if (j) {
    const auto f = [&](const std::array<double, 2>& x) { return bell_raw(c, jj, x[0], x[1]); };
    auto [x, v] = nelder_mead_max<2>(f, {theta0, phi0}, {0.5 * da, 0.5 * da}, options.tolerance,
                                     options.max_iterations);
    if (v > value) {
      theta = x[0];
      phi = x[1];
      value = v;
    }
  } else {
    const auto clamp_j = [&](double v) { return std::clamp(v, kMinJ, options.j_max); };
    const auto f = [&](const std::array<double, 3>& x) {
      return bell_raw(c, clamp_j(x[2]), x[0], x[1]);
    };
    const double dj = options.j_max / nj;
    auto [x, v] = nelder_mead_max<3>(f, {theta0, phi0, j0}, {0.5 * da, 0.5 * da, -0.5 * dj},
                                     options.tolerance, options.max_iterations);
    if (v > value) {
      theta = x[0];
      phi = x[1];
      jj = clamp_j(x[2]);
      value = v;
    }
  }
  out.setting = BellSetting(jj, theta, phi);
  out.value = BellValue::of(value);
  return out;
}

}  // namespace otcss
