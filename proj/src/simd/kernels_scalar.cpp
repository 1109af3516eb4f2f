#include "kernels_impl.hpp"

#include <algorithm>
#include <limits>

namespace expdyn::simd::detail::scalar {

double exp(double x) noexcept
{
    if (x < kExpUnderflow)
        return 0.0;
    if (x > kExpOverflow)
        return std::numeric_limits<double>::infinity();
    const double t = x * kLog2e + kMagic;
    const double k = t - kMagic;
    const std::int64_t ki = bits_of(t) - bits_of(kMagic);
    const double r = (x - k * kLn2Hi) - k * kLn2Lo;

    double p = kExpC[13];
    for (int i = 12; i >= 0; --i)
        p = p * r + kExpC[i];

    const double scale = from_bits((ki + 1023) << 52);
    return p * scale;
}

void sincos(double y, double& s, double& c) noexcept
{
    const double t = y * kTwoOverPi + kMagic;
    const double q = t - kMagic;
    const std::int64_t qi = bits_of(t) - bits_of(kMagic);

    double r = ((y - q * kPio2_1) - q * kPio2_2) - q * kPio2_3;
    r = std::min(std::max(r, -kReducedBound), kReducedBound);

    const double z = r * r;
    const double ps = kS1 + z * (kS2 + z * (kS3 + z * (kS4 + z * (kS5 + z * kS6))));
    const double sr = r + (r * z) * ps;

    const double pc = kC1 + z * (kC2 + z * (kC3 + z * (kC4 + z * (kC5 + z * kC6))));
    const double hz = 0.5 * z;
    const double w = 1.0 - hz;
    const double cr = w + (((1.0 - w) - hz) + (z * z) * pc);

    const bool swap = (qi & 1) != 0;
    const bool neg_s = (qi & 2) != 0;
    const bool neg_c = ((qi + 1) & 2) != 0;
    const double s0 = swap ? cr : sr;
    const double c0 = swap ? sr : cr;
    s = neg_s ? -s0 : s0;
    c = neg_c ? -c0 : c0;
}

void exp_batch(const double* x, std::size_t n, double* out) noexcept
{
    for (std::size_t i = 0; i < n; ++i)
        out[i] = exp(x[i]);
}

void sincos_batch(const double* y, std::size_t n, double* s, double* c) noexcept
{
    for (std::size_t i = 0; i < n; ++i)
        sincos(y[i], s[i], c[i]);
}

void sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx, double qy,
                double* out) noexcept
{
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        out[i] = dx * dx + dy * dy;
    }
}

void sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                double qx, double qy, double qz, double* out) noexcept
{
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double dz = zs[i] - qz;
        out[i] = (dx * dx + dy * dy) + dz * dz;
    }
}

double min_sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx,
                      double qy) noexcept
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        best = std::min(best, dx * dx + dy * dy);
    }
    return best;
}

double min_sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                      double qx, double qy, double qz) noexcept
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double dz = zs[i] - qz;
        best = std::min(best, (dx * dx + dy * dy) + dz * dz);
    }
    return best;
}

void escape_steps(const double* re, const double* im, std::size_t n,
                  const EscapeParams& params, std::int32_t* steps) noexcept
{
    for (std::size_t i = 0; i < n; ++i) {
        double zr = re[i];
        double zi = im[i];
        std::int32_t result = kBounded;
        if (zr > params.r_escape) {
            result = 0;
        } else {
            for (int step = 1; step <= params.n_max; ++step) {
                if (zr > kLedge) {
                    result = step;
                    break;
                }
                const double ex = exp(zr);
                double sn, cs;
                sincos(zi, sn, cs);
                zr = ex * cs + params.a;
                zi = ex * sn;
                if (zr > params.r_escape) {
                    result = step;
                    break;
                }
            }
        }
        steps[i] = result;
    }
}

}  // namespace expdyn::simd::detail::scalar
