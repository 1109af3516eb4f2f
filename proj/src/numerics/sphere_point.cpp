#include "expdyn/numerics.hpp"

#include <cmath>
#include <numbers>

namespace expdyn {

SpherePoint SpherePoint::finite(double re, double im)
{
    if (std::isnan(re) || std::isnan(im))
        throw std::invalid_argument("sphere point component is NaN");
    if (std::isinf(re) || std::isinf(im))
        return infinity();
    SpherePoint p;
    p.re_ = re;
    p.im_ = im;
    return p;
}

SpherePoint SpherePoint::infinity() noexcept
{
    SpherePoint p;
    p.infinite_ = true;
    return p;
}

Complex SpherePoint::value() const
{
    if (infinite_)
        throw std::logic_error("value() of the point at infinity");
    return {re_, im_};
}

double SpherePoint::modulus() const noexcept
{
    return infinite_ ? HUGE_VAL : std::hypot(re_, im_);
}

SpherePoint conj(const SpherePoint& p)
{
    return p.is_infinite() ? p : SpherePoint::finite(p.re(), -p.im());
}

double normalize_arg(double theta) noexcept
{
    double r = std::remainder(theta, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r += 2.0 * std::numbers::pi;
    return r;
}

ExtendedValue safe_exp(Complex z)
{
    if (z.real() > kOverflowLedge)
        return LogMagnitude{z.real(), normalize_arg(z.imag())};
    return SpherePoint::finite(std::exp(z));
}

bool PointSet::contains_infinity() const noexcept
{
    for (const auto& p : points_)
        if (p.is_infinite())
            return true;
    return false;
}

void PointSet::append(const PointSet& other)
{
    points_.insert(points_.end(), other.points_.begin(), other.points_.end());
}

}  // namespace expdyn
