#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference and
// an AVX2 variant; the variant in use is picked once at startup from the CPU
// features (override with EXPDYN_SIMD=scalar|avx2). Both variants perform the
// same IEEE operations in the same order, so their outputs are bit-identical.

#include <cstdint>
#include <span>
#include <string_view>

namespace expdyn::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best instruction set compiled in and supported by this CPU.
Isa detected_isa() noexcept;

/// Instruction set currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Forces an instruction set (tests, benchmarks). Throws std::runtime_error
/// if the CPU or build lacks it.
void set_active_isa(Isa isa);

bool isa_available(Isa isa) noexcept;

// --- distances -------------------------------------------------------------

/// Squared Euclidean distances from q to every point (structure of arrays).
void sq_dist_2d(std::span<const double> xs, std::span<const double> ys, double qx, double qy,
                std::span<double> out);
void sq_dist_3d(std::span<const double> xs, std::span<const double> ys,
                std::span<const double> zs, double qx, double qy, double qz,
                std::span<double> out);

/// Minimum squared distance from q (+inf for no points).
double min_sq_dist_2d(std::span<const double> xs, std::span<const double> ys, double qx,
                      double qy);
double min_sq_dist_3d(std::span<const double> xs, std::span<const double> ys,
                      std::span<const double> zs, double qx, double qy, double qz);

// --- escape time -----------------------------------------------------------

struct EscapeParams {
    double a = 0.0;
    double r_escape = 50.0;
    int n_max = 64;
};

inline constexpr std::int32_t kBounded = -1;

/// Iterates z -> exp(z) + a from each start point. steps[i] is the first n
/// with re(f^n) > r_escape, or the step at which the orbit passes the
/// overflow ledge, or kBounded. Uses the kernel exponential below, not libm.
void escape_steps(std::span<const double> re, std::span<const double> im,
                  const EscapeParams& params, std::span<std::int32_t> steps);

/// The kernel's elementary functions, exposed for testing. Accurate to a few
/// ulp for |x| <= 708 and |y| < 2^20; for larger |y| the result stays
/// bounded by 1 in modulus but loses accuracy.
double kernel_exp(double x) noexcept;
void kernel_sincos(double y, double& s, double& c) noexcept;

/// Batched forms of the above through the active instruction set.
void exp_batch(std::span<const double> x, std::span<double> out);
void sincos_batch(std::span<const double> y, std::span<double> s, std::span<double> c);

}  // namespace expdyn::simd
