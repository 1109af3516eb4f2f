#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace expdyn::simd::detail::avx2 {

namespace {

inline __m256d exp4(__m256d x)
{
    const __m256d magic = _mm256_set1_pd(kMagic);
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)), magic);
    const __m256d k = _mm256_sub_pd(t, magic);
    const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(t), _mm256_castpd_si256(magic));
    const __m256d r = _mm256_sub_pd(_mm256_sub_pd(x, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Hi))),
                                    _mm256_mul_pd(k, _mm256_set1_pd(kLn2Lo)));

    __m256d p = _mm256_set1_pd(kExpC[13]);
    for (int i = 12; i >= 0; --i)
        p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(kExpC[i]));

    const __m256i biased = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(biased));

    const __m256d under = _mm256_cmp_pd(x, _mm256_set1_pd(kExpUnderflow), _CMP_LT_OQ);
    const __m256d over = _mm256_cmp_pd(x, _mm256_set1_pd(kExpOverflow), _CMP_GT_OQ);
    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), under);
    result = _mm256_blendv_pd(result, _mm256_set1_pd(std::numeric_limits<double>::infinity()),
                              over);
    return result;
}

inline __m256d poly6(__m256d z, double c1, double c2, double c3, double c4, double c5,
                     double c6)
{
    __m256d p = _mm256_set1_pd(c6);
    p = _mm256_add_pd(_mm256_set1_pd(c5), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(c4), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(c3), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(c2), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(c1), _mm256_mul_pd(z, p));
    return p;
}

inline void sincos4(__m256d y, __m256d& s, __m256d& c)
{
    const __m256d magic = _mm256_set1_pd(kMagic);
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(y, _mm256_set1_pd(kTwoOverPi)), magic);
    const __m256d q = _mm256_sub_pd(t, magic);
    const __m256i qi = _mm256_sub_epi64(_mm256_castpd_si256(t), _mm256_castpd_si256(magic));

    __m256d r = _mm256_sub_pd(y, _mm256_mul_pd(q, _mm256_set1_pd(kPio2_1)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(q, _mm256_set1_pd(kPio2_2)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(q, _mm256_set1_pd(kPio2_3)));
    r = _mm256_min_pd(_mm256_max_pd(r, _mm256_set1_pd(-kReducedBound)),
                      _mm256_set1_pd(kReducedBound));

    const __m256d z = _mm256_mul_pd(r, r);
    const __m256d ps = poly6(z, kS1, kS2, kS3, kS4, kS5, kS6);
    const __m256d sr = _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(r, z), ps));

    const __m256d pc = poly6(z, kC1, kC2, kC3, kC4, kC5, kC6);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
    const __m256d w = _mm256_sub_pd(one, hz);
    const __m256d cr = _mm256_add_pd(
        w, _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(one, w), hz),
                         _mm256_mul_pd(_mm256_mul_pd(z, z), pc)));

    const __m256i one_i = _mm256_set1_epi64x(1);
    const __m256i two_i = _mm256_set1_epi64x(2);
    const __m256d swap =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one_i), one_i));
    const __m256d sign_s = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(qi, two_i), 62));
    const __m256d sign_c = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one_i), two_i), 62));

    const __m256d s0 = _mm256_blendv_pd(sr, cr, swap);
    const __m256d c0 = _mm256_blendv_pd(cr, sr, swap);
    s = _mm256_xor_pd(s0, sign_s);
    c = _mm256_xor_pd(c0, sign_c);
}

inline double hmin(__m256d v)
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

}  // namespace

void exp_batch(const double* x, std::size_t n, double* out) noexcept
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i)
        out[i] = scalar::exp(x[i]);
}

void sincos_batch(const double* y, std::size_t n, double* s, double* c) noexcept
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vs, vc;
        sincos4(_mm256_loadu_pd(y + i), vs, vc);
        _mm256_storeu_pd(s + i, vs);
        _mm256_storeu_pd(c + i, vc);
    }
    for (; i < n; ++i)
        scalar::sincos(y[i], s[i], c[i]);
}

void sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx, double qy,
                double* out) noexcept
{
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    scalar::sq_dist_2d(xs + i, ys + i, n - i, qx, qy, out + i);
}

void sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                double qx, double qy, double qz, double* out) noexcept
{
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    const __m256d vz = _mm256_set1_pd(qz);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vz);
        const __m256d d2 =
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                          _mm256_mul_pd(dz, dz));
        _mm256_storeu_pd(out + i, d2);
    }
    scalar::sq_dist_3d(xs + i, ys + i, zs + i, n - i, qx, qy, qz, out + i);
}

double min_sq_dist_2d(const double* xs, const double* ys, std::size_t n, double qx,
                      double qy) noexcept
{
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        best = _mm256_min_pd(best, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    return std::min(hmin(best), scalar::min_sq_dist_2d(xs + i, ys + i, n - i, qx, qy));
}

double min_sq_dist_3d(const double* xs, const double* ys, const double* zs, std::size_t n,
                      double qx, double qy, double qz) noexcept
{
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    const __m256d vz = _mm256_set1_pd(qz);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vz);
        const __m256d d2 =
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                          _mm256_mul_pd(dz, dz));
        best = _mm256_min_pd(best, d2);
    }
    return std::min(hmin(best),
                    scalar::min_sq_dist_3d(xs + i, ys + i, zs + i, n - i, qx, qy, qz));
}

void escape_steps(const double* re, const double* im, std::size_t n,
                  const EscapeParams& params, std::int32_t* steps) noexcept
{
    const __m256d r_escape = _mm256_set1_pd(params.r_escape);
    const __m256d ledge = _mm256_set1_pd(kLedge);
    const __m256d a = _mm256_set1_pd(params.a);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d zr = _mm256_loadu_pd(re + i);
        __m256d zi = _mm256_loadu_pd(im + i);
        __m256d result = _mm256_set1_pd(static_cast<double>(kBounded));
        __m256d done = _mm256_cmp_pd(zr, r_escape, _CMP_GT_OQ);
        result = _mm256_blendv_pd(result, _mm256_setzero_pd(), done);

        for (int step = 1; step <= params.n_max && _mm256_movemask_pd(done) != 0xF; ++step) {
            const __m256d vstep = _mm256_set1_pd(static_cast<double>(step));
            const __m256d past_ledge =
                _mm256_andnot_pd(done, _mm256_cmp_pd(zr, ledge, _CMP_GT_OQ));
            result = _mm256_blendv_pd(result, vstep, past_ledge);
            done = _mm256_or_pd(done, past_ledge);

            const __m256d ex = exp4(zr);
            __m256d sn, cs;
            sincos4(zi, sn, cs);
            const __m256d nr = _mm256_add_pd(_mm256_mul_pd(ex, cs), a);
            const __m256d ni = _mm256_mul_pd(ex, sn);
            zr = _mm256_blendv_pd(nr, zr, done);
            zi = _mm256_blendv_pd(ni, zi, done);

            const __m256d escaped = _mm256_andnot_pd(done, _mm256_cmp_pd(zr, r_escape, _CMP_GT_OQ));
            result = _mm256_blendv_pd(result, vstep, escaped);
            done = _mm256_or_pd(done, escaped);
        }

        const __m128i packed = _mm256_cvtpd_epi32(result);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(steps + i), packed);
    }
    scalar::escape_steps(re + i, im + i, n - i, params, steps + i);
}

}  // namespace expdyn::simd::detail::avx2
