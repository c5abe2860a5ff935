#include "otcss/simd.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace otcss::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(OTCSS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("OTCSS_ISA"); env != nullptr && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void require(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel ISA not available on this build/CPU: " +
                                std::string(isa_name(isa)));
  }
}

void check_sizes(std::size_t expected, std::size_t got) {
  if (expected != got) throw std::invalid_argument("kernel span size mismatch");
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

void gaussian_form(Isa isa, const Form4& form, double scale, PointsView points,
                   std::span<double> out) {
  const std::size_t n = points.size();
  check_sizes(n, points.p1.size());
  check_sizes(n, points.q2.size());
  check_sizes(n, points.p2.size());
  check_sizes(n, out.size());
  require(isa);
#if defined(OTCSS_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) {
    detail::gaussian_form_avx2(form, scale, points, out);
    return;
  }
#endif
  detail::gaussian_form_scalar(form, scale, points, out);
}

void exp_batch(Isa isa, std::span<const double> in, std::span<double> out) {
  check_sizes(in.size(), out.size());
  require(isa);
#if defined(OTCSS_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) {
    detail::exp_batch_avx2(in, out);
    return;
  }
#endif
  detail::exp_batch_scalar(in, out);
}

double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  require(isa);
#if defined(OTCSS_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return detail::dot_avx2(a, b);
#endif
  return detail::dot_scalar(a, b);
}

}  // namespace otcss::simd
