#include <cmath>

#include "otcss/simd.hpp"

namespace otcss::simd::detail {

void gaussian_form_scalar(const Form4& s, double scale, PointsView pts, std::span<double> out) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double q1 = pts.q1[i], p1 = pts.p1[i], q2 = pts.q2[i], p2 = pts.p2[i];
    const double diag = s[0] * q1 * q1 + s[5] * p1 * p1 + s[10] * q2 * q2 + s[15] * p2 * p2;
    const double cross = s[1] * q1 * p1 + s[2] * q1 * q2 + s[3] * q1 * p2 + s[6] * p1 * q2 +
                         s[7] * p1 * p2 + s[11] * q2 * p2;
    out[i] = scale * std::exp(-0.5 * (diag + 2.0 * cross));
  }
}

void exp_batch_scalar(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::exp(in[i]);
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace otcss::simd::detail
