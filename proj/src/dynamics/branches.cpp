#include "expdyn/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace expdyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// 2 pi - kTwoPi, so that kTwoPi + kTwoPiLo carries 2 pi to about 107 bits.
constexpr double kTwoPiLo = 2.4492935982947064e-16;

/// theta + 2 pi m rounded once: far from the origin strip a plain sum loses
/// a few ulps, which the forward map turns into a visible roundtrip error.
double add_turns(double theta, long m)
{
    const double md = static_cast<double>(m);
    const double p = md * kTwoPi;
    const double p_err = std::fma(md, kTwoPi, -p);
    const double s = theta + p;
    const double bb = s - theta;
    const double s_err = (theta - (s - bb)) + (p - bb);
    return s + (s_err + p_err + md * kTwoPiLo);
}

}  // namespace

Complex inv_halfplane(const ExpMap& f, Sign sigma, Complex w)
{
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw ComputationError("inverse branch needs a finite point");
    if (w.real() == f.a() && w.imag() == 0.0)
        throw ComputationError("asymptotic value has no preimage under this branch");
    if (sigma == Sign::plus && w.imag() < 0.0)
        throw ComputationError("point is not in the closed upper half-plane");
    if (sigma == Sign::minus && w.imag() > 0.0)
        throw ComputationError("point is not in the closed lower half-plane");

    const double dx = w.real() - f.a();
    // On the real axis the closure convention picks arg 0 or +-pi by sign.
    double dy = w.imag();
    if (dy == 0.0)
        dy = sigma == Sign::plus ? 0.0 : -0.0;
    return {std::log(std::hypot(dx, dy)), std::atan2(dy, dx)};
}

Complex inv_strip(const ExpMap& f, long k, Complex w)
{
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw ComputationError("inverse branch needs a finite point");
    if (w.imag() == 0.0 && w.real() >= f.a())
        throw ComputationError("branch-cut point");

    const double dx = w.real() - f.a();
    const double dy = w.imag();
    const double theta = std::atan2(dy, dx);

    const double lo = static_cast<double>(k) * kTwoPi;
    const double hi = static_cast<double>(k + 1) * kTwoPi;
    double im = add_turns(theta, theta < 0.0 ? k + 1 : k);
    // Keep the value strictly inside the open strip after rounding.
    if (im <= lo)
        im = std::nextafter(lo, hi);
    if (im >= hi)
        im = std::nextafter(hi, lo);
    return {std::log(std::hypot(dx, dy)), im};
}

Complex inv_centered(const ExpMap& f, long s, Complex w)
{
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw ComputationError("inverse branch needs a finite point");
    if (w.real() == f.a() && w.imag() == 0.0)
        throw ComputationError("asymptotic value has no preimage");

    const double dx = w.real() - f.a();
    const double dy = w.imag();
    double theta = std::atan2(dy, dx);
    if (theta == -std::numbers::pi)
        theta = std::numbers::pi;
    return {std::log(std::hypot(dx, dy)), add_turns(theta, s)};
}

}  // namespace expdyn
