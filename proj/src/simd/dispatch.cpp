#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace expdyn::simd {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(EXPDYN_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept
{
    Isa isa = detected_isa();
    if (const char* env = std::getenv("EXPDYN_SIMD")) {
        const std::string requested(env);
        if (requested == "scalar")
            isa = Isa::scalar;
        else if (requested == "avx2" && isa_available(Isa::avx2))
            isa = Isa::avx2;
    }
    return isa;
}

std::atomic<Isa>& active()
{
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

bool use_avx2() noexcept
{
    return active().load(std::memory_order_relaxed) == Isa::avx2;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept
{
    return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa detected_isa() noexcept
{
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept
{
    return active().load(std::memory_order_relaxed);
}

void set_active_isa(Isa isa)
{
    if (!isa_available(isa))
        throw std::runtime_error("instruction set not available: " + std::string(isa_name(isa)));
    active().store(isa, std::memory_order_relaxed);
}

#if defined(EXPDYN_BUILD_AVX2)
#define EXPDYN_DISPATCH(call) (use_avx2() ? detail::avx2::call : detail::scalar::call)
#else
#define EXPDYN_DISPATCH(call) (detail::scalar::call)
#endif

void sq_dist_2d(std::span<const double> xs, std::span<const double> ys, double qx, double qy,
                std::span<double> out)
{
    EXPDYN_DISPATCH(sq_dist_2d(xs.data(), ys.data(), xs.size(), qx, qy, out.data()));
}

void sq_dist_3d(std::span<const double> xs, std::span<const double> ys,
                std::span<const double> zs, double qx, double qy, double qz,
                std::span<double> out)
{
    EXPDYN_DISPATCH(sq_dist_3d(xs.data(), ys.data(), zs.data(), xs.size(), qx, qy, qz, out.data()));
}

double min_sq_dist_2d(std::span<const double> xs, std::span<const double> ys, double qx,
                      double qy)
{
    return EXPDYN_DISPATCH(min_sq_dist_2d(xs.data(), ys.data(), xs.size(), qx, qy));
}

double min_sq_dist_3d(std::span<const double> xs, std::span<const double> ys,
                      std::span<const double> zs, double qx, double qy, double qz)
{
    return EXPDYN_DISPATCH(min_sq_dist_3d(xs.data(), ys.data(), zs.data(), xs.size(), qx, qy, qz));
}

void escape_steps(std::span<const double> re, std::span<const double> im,
                  const EscapeParams& params, std::span<std::int32_t> steps)
{
    EXPDYN_DISPATCH(escape_steps(re.data(), im.data(), re.size(), params, steps.data()));
}

void exp_batch(std::span<const double> x, std::span<double> out)
{
    EXPDYN_DISPATCH(exp_batch(x.data(), x.size(), out.data()));
}

void sincos_batch(std::span<const double> y, std::span<double> s, std::span<double> c)
{
    EXPDYN_DISPATCH(sincos_batch(y.data(), y.size(), s.data(), c.data()));
}

double kernel_exp(double x) noexcept
{
    return detail::scalar::exp(x);
}

void kernel_sincos(double y, double& s, double& c) noexcept
{
    detail::scalar::sincos(y, s, c);
}

}  // namespace expdyn::simd
