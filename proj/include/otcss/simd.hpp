#pragma once

// Batched arithmetic kernels behind the closed-form evaluators.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant compiled in its own translation unit. The variant is picked at
// runtime from CPUID; OTCSS_ISA=scalar in the environment forces the
// reference path. Both paths are deterministic for a fixed ISA.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace otcss::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True if the kernels for `isa` are compiled in and the CPU can run them.
bool isa_supported(Isa isa) noexcept;

/// Best supported ISA, honouring OTCSS_ISA. Computed once per process.
Isa active_isa() noexcept;

/// Row-major symmetric 4x4 matrix S of a quadratic form x^T S x.
using Form4 = std::array<double, 16>;

/// Structure-of-arrays view over phase-space points (q1, p1, q2, p2).
struct PointsView {
  std::span<const double> q1;
  std::span<const double> p1;
  std::span<const double> q2;
  std::span<const double> p2;

  std::size_t size() const noexcept { return q1.size(); }
};

/// out[i] = scale * exp(-0.5 * x_i^T S x_i).
void gaussian_form(Isa isa, const Form4& form, double scale, PointsView points,
                   std::span<double> out);

/// out[i] = exp(in[i]). `in` and `out` may alias.
void exp_batch(Isa isa, std::span<const double> in, std::span<double> out);

/// Sum of a[i] * b[i].
double dot(Isa isa, std::span<const double> a, std::span<const double> b);

inline void gaussian_form(const Form4& form, double scale, PointsView points,
                          std::span<double> out) {
  gaussian_form(active_isa(), form, scale, points, out);
}
inline void exp_batch(std::span<const double> in, std::span<double> out) {
  exp_batch(active_isa(), in, out);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(active_isa(), a, b);
}

namespace detail {

void gaussian_form_scalar(const Form4& form, double scale, PointsView points,
                          std::span<double> out);
void exp_batch_scalar(std::span<const double> in, std::span<double> out);
double dot_scalar(std::span<const double> a, std::span<const double> b);

#if defined(OTCSS_HAVE_AVX2_KERNELS)
void gaussian_form_avx2(const Form4& form, double scale, PointsView points,
                        std::span<double> out);
void exp_batch_avx2(std::span<const double> in, std::span<double> out);
double dot_avx2(std::span<const double> a, std::span<const double> b);
#endif

}  // namespace detail
}  // namespace otcss::simd
