#include "expdyn/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace expdyn {

char sign_char(Sign s) noexcept
{
    return s == Sign::plus ? '+' : '-';
}

Sign parse_sign(std::string_view s)
{
    if (s == "+" || s == "plus" || s == "p")
        return Sign::plus;
    if (s == "-" || s == "minus" || s == "m")
        return Sign::minus;
    throw std::invalid_argument("sign must be + or -, got '" + std::string(s) + "'");
}

ExpMap::ExpMap(double a) : ExpMap(a, Options{}) {}

ExpMap::ExpMap(double a, const Options& options)
    : a_(a), r_escape_(options.r_escape), n_max_default_(options.n_max_default)
{
    if (!std::isfinite(a))
        throw std::invalid_argument("parameter a must be finite");
    if (a <= -1.0 && !options.allow_any_a)
        throw std::invalid_argument("parameter a must exceed -1 (override required for a <= -1)");
    if (!(r_escape_ >= 10.0))
        throw std::invalid_argument("escape threshold must be at least 10");
    if (n_max_default_ < 1)
        throw std::invalid_argument("iteration cap must be positive");
}

ExtendedValue apply(const ExpMap& f, Complex z)
{
    auto e = safe_exp(z);
    if (auto* p = std::get_if<SpherePoint>(&e))
        return SpherePoint::finite(p->value() + f.a());
    return e;
}

int EscapeResult::step() const noexcept
{
    if (auto* e = std::get_if<Escaped>(&tag))
        return e->n;
    if (auto* o = std::get_if<Overflowed>(&tag))
        return o->n;
    return -1;
}

std::string EscapeResult::tag_name() const
{
    if (escaped())
        return "escaped";
    if (overflowed())
        return "overflowed";
    return "bounded";
}

EscapeResult orbit(const ExpMap& f, Complex z, int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("n_max must be at least 1");
    EscapeResult result;
    result.input = z;
    result.orbit_prefix.push_back(SpherePoint::finite(z));
    if (z.real() > f.r_escape()) {
        result.tag = Escaped{0};
        return result;
    }
    Complex current = z;
    for (int n = 1; n <= n_max; ++n) {
        const auto next = apply(f, current);
        if (auto* big = std::get_if<LogMagnitude>(&next)) {
            result.tag = Overflowed{n, *big};
            return result;
        }
        const auto& p = std::get<SpherePoint>(next);
        result.orbit_prefix.push_back(p);
        current = p.value();
        if (current.real() > f.r_escape()) {
            result.tag = Escaped{n};
            return result;
        }
    }
    result.tag = Bounded{n_max, result.orbit_prefix.back()};
    return result;
}

long strip_index(double im) noexcept
{
    return std::lround(im / (2.0 * std::numbers::pi));
}

double boundary_distance(double im) noexcept
{
    const double offset = im - 2.0 * std::numbers::pi * static_cast<double>(strip_index(im));
    return std::numbers::pi - std::abs(offset);
}

std::string Itinerary::termination_name() const
{
    switch (terminated_by) {
    case Termination::cap_reached:
        return "cap_reached";
    case Termination::overflow:
        return "overflow";
    case Termination::boundary_hit:
        return "boundary_hit";
    }
    return "unknown";
}

Itinerary itinerary(const ExpMap& f, Complex z, int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("n_max must be at least 1");
    Itinerary it;
    it.input = z;
    ExtendedValue current = SpherePoint::finite(z);
    for (int n = 0; n < n_max; ++n) {
        const auto* p = std::get_if<SpherePoint>(&current);
        if (p == nullptr) {
            it.terminated_by = Termination::overflow;
            it.terminated_at = n;
            return it;
        }
        const Complex w = p->value();
        if (boundary_distance(w.imag()) <= kBoundaryTolerance) {
            it.terminated_by = Termination::boundary_hit;
            it.terminated_at = n;
            return it;
        }
        it.entries.push_back(strip_index(w.imag()));
        if (n + 1 < n_max)
            current = apply(f, w);
    }
    it.terminated_by = Termination::cap_reached;
    it.terminated_at = n_max;
    return it;
}

}  // namespace expdyn
