#include "chain.hpp"

#include "expdyn/continuum.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace expdyn::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogTiny = std::log(kTinyIm);

/// atan(e^-q) for q of either sign, without overflow.
double atan_exp_neg(double q) noexcept
{
    return q >= 0.0 ? std::atan2(std::exp(-q), 1.0) : std::atan2(1.0, std::exp(q));
}

double log_cosh(double tau) noexcept
{
    const double t = std::abs(tau);
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

}  // namespace

Complex ChainPoint::value() const noexcept
{
    return {height == 0 ? re : rsign * kInf, tiny ? std::exp(im) : im};
}

ChainPoint plain_point(Complex z) noexcept
{
    ChainPoint p;
    p.re = z.real();
    if (z.imag() > 0.0 && z.imag() < kTinyIm) {
        p.tiny = true;
        p.im = std::log(z.imag());
    } else {
        p.im = z.imag();
    }
    return p;
}

bool pull(const ChainPoint& w, double a, ChainPoint& out)
{
    out = ChainPoint{};
    if (w.height > 0) {
        // |w| >= e^709: the logarithm ignores a and the imaginary part up to
        // a relative e^-709.
        if (w.height > 1) {
            out.height = w.height - 1;
            out.re = w.re;
        } else {
            out.re = w.re;
        }
        if (w.rsign < 0) {
            out.im = std::numbers::pi;
            return true;
        }
        const double log_x = w.height > 1 ? kInf : w.re;
        const double log_im = w.tiny ? w.im : (w.im > 0.0 ? std::log(w.im) : -kInf);
        out.tiny = true;
        out.im = log_im - log_x;
        return true;
    }

    const double dx = w.re - a;
    if (!w.tiny) {
        const double dy = w.im;
        if (dx == 0.0 && dy == 0.0)
            return false;
        out.re = std::log(std::hypot(dx, dy));
        if (dx > 0.0 && dy > 0.0 && dy < kTinyIm * dx) {
            out.tiny = true;
            out.im = std::log(dy) - std::log(dx);
        } else {
            out.im = std::atan2(dy, dx);
        }
        return true;
    }

    const double ell = w.im;
    if (dx == 0.0) {
        if (ell == -kInf)
            return false;
        out.re = ell;
        out.im = std::numbers::pi / 2.0;
        return true;
    }
    const double log_dx = std::log(std::abs(dx));
    const double q = log_dx - ell;
    out.re = q > 0.0 ? log_dx + 0.5 * std::log1p(std::exp(-2.0 * q))
                     : ell + 0.5 * std::log1p(std::exp(2.0 * q));
    if (dx > 0.0) {
        if (-q < kLogTiny) {
            out.tiny = true;
            out.im = -q;
        } else {
            out.im = atan_exp_neg(q);
        }
    } else {
        out.im = std::numbers::pi - atan_exp_neg(q);
    }
    return true;
}

Chain chain_from(int level, const ChainPoint& start, double a, int k)
{
    Chain chain;
    chain.first = level;
    chain.levels.reserve(static_cast<std::size_t>(k - level + 1));
    chain.levels.push_back(start);
    for (int l = level + 1; l <= k; ++l) {
        ChainPoint next;
        if (!pull(chain.levels.back(), a, next)) {
            chain.end = ChainEnd::hit_a;
            return chain;
        }
        chain.levels.push_back(next);
    }
    if (!chain.levels.back().representable())
        chain.end = ChainEnd::infinite;
    return chain;
}

Chain tower_chain(double a, int k, double p)
{
    const TowerReal t = tower_from_param(p);
    ChainPoint start;
    start.height = t.height;
    start.rsign = t.sign;
    start.re = t.height > 0 ? t.base : t.sign * t.base;
    start.im = std::numbers::pi;
    return chain_from(1, start, a, k);
}

double hairpin_tau(double dx, double ell) noexcept
{
    if (dx == 0.0)
        return 0.0;
    const double q = std::log(std::abs(dx)) - ell;
    if (q < 20.0)
        return std::asinh(std::copysign(std::exp(q), dx));
    return std::copysign(q + std::numbers::ln2, dx);
}

ChainPoint hairpin_image(double ell, double tau) noexcept
{
    ChainPoint p;
    p.re = ell + log_cosh(tau);
    // arg(sinh(tau) + i) = atan(1 / sinh(tau)) ~ 2 e^-tau for large tau.
    const double log_arg = std::numbers::ln2 - tau;
    if (tau > 0.0 && log_arg < kLogTiny) {
        p.tiny = true;
        p.im = log_arg;
    } else {
        p.im = std::atan2(1.0, std::sinh(tau));
    }
    return p;
}

}  // namespace expdyn::detail
