#pragma once

// Per-ISA kernel entry points and the constants shared by all of them. The
// AVX2 code repeats the scalar operation sequence lane by lane; keep the two
// in lockstep when touching either.

#include "expdyn/simd/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <cstring>

namespace expdyn::simd::detail {

inline constexpr double kMagic = 6755399441055744.0;  // 1.5 * 2^52
inline constexpr double kLog2e = 1.4426950408889634;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpUnderflow = -708.0;
inline constexpr double kExpOverflow = 709.0;
inline constexpr double kLedge = 690.0;

// 1/n! for n = 0..13
inline constexpr double kExpC[14] = {
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
};

inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPio2_1 = 1.57079632673412561417e+00;
inline constexpr double kPio2_2 = 6.07710050630396597660e-11;
inline constexpr double kPio2_3 = 2.02226624871116645580e-21;
inline constexpr double kReducedBound = 0.7854;  // slightly above pi/4

inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

inline std::int64_t bits_of(double x) noexcept
{
    std::int64_t b;
    std::memcpy(&b, &x, sizeof b);
    return b;
}

inline double from_bits(std::int64_t b) noexcept
{
    double x;
    std::memcpy(&x, &b, sizeof x);
    return x;
}

namespace scalar {

void exp_batch(const double* x, std::size_t n, double* out) noexcept;
void sincos_batch(const double* y, std::size_t n, double* s, double* c) noexcept;
double exp(double x) noexcept;
void sincos(double y, double& s, double& c) noexcept;

void sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx, double qy,
                double* out) noexcept;
void sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                double qx, double qy, double qz, double* out) noexcept;
double min_sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx,
                      double qy) noexcept;
double min_sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                      double qx, double qy, double qz) noexcept;
void escape_steps(const double* re, const double* im, std::size_t n,
                  const EscapeParams& params, std::int32_t* steps) noexcept;

}  // namespace scalar

namespace avx2 {

void exp_batch(const double* x, std::size_t n, double* out) noexcept;
void sincos_batch(const double* y, std::size_t n, double* s, double* c) noexcept;
void sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx, double qy,
                double* out) noexcept;
void sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                double qx, double qy, double qz, double* out) noexcept;
double min_sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx,
                      double qy) noexcept;
double min_sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                      double qx, double qy, double qz) noexcept;
void escape_steps(const double* re, const double* im, std::size_t n,
                  const EscapeParams& params, std::int32_t* steps) noexcept;

}  // namespace avx2

}  // namespace expdyn::simd::detail
