#include "expdyn/continuum.hpp"

#include "chain.hpp"
#include "refine.hpp"
#include "expdyn/text.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expdyn {

namespace {

// exp is applied symbolically beyond this argument.
constexpr double kExpArgLimit = 709.0;

}  // namespace

void Window::validate() const
{
    const bool finite = std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
                        std::isfinite(y_max);
    if (!finite || !(x_min < x_max) || !(y_min < y_max))
        throw std::invalid_argument("window must be a bounded nondegenerate rectangle");
}

Window Window::parse(std::string_view spec)
{
    const auto parts = text::split(spec, ',');
    if (parts.size() != 4)
        throw std::invalid_argument("window must be x0,x1,y0,y1");
    Window w{text::parse_double(parts[0]), text::parse_double(parts[1]),
             text::parse_double(parts[2]), text::parse_double(parts[3])};
    w.validate();
    return w;
}

std::string Window::to_string() const
{
    return text::format_double(x_min) + "," + text::format_double(x_max) + "," +
           text::format_double(y_min) + "," + text::format_double(y_max);
}

TowerReal tower_from_param(double p)
{
    if (!std::isfinite(p))
        throw std::invalid_argument("curve parameter must be finite");
    TowerReal t;
    t.sign = p < 0.0 ? -1 : 1;
    const double mag = std::abs(p);
    if (mag <= 1.0) {
        t.base = mag;
        return t;
    }
    const double n = std::ceil(mag) - 1.0;
    double v = mag - n;
    int h = static_cast<int>(n);
    while (h > 0 && v <= kExpArgLimit) {
        v = std::exp(v);
        --h;
    }
    t.height = h;
    t.base = v;
    return t;
}

double param_from_u(double u)
{
    if (!std::isfinite(u))
        throw std::invalid_argument("u must be finite");
    double v = std::abs(u);
    double n = 0.0;
    while (v > 1.0) {
        v = std::log(v);
        n += 1.0;
    }
    return std::copysign(n + v, u);
}

namespace {

SpherePoint ray_point(const ExpMap& f, double p)
{
    const TowerReal t = tower_from_param(p);
    if (t.height > 0)
        return t.sign > 0 ? SpherePoint::infinity() : SpherePoint::finite(f.a(), 0.0);
    const double e = std::exp(t.sign * t.base);
    if (!std::isfinite(e))
        return SpherePoint::infinity();
    return SpherePoint::finite(f.a() - e, 0.0);
}

}  // namespace

SpherePoint gamma_point(const ExpMap& f, Sign sigma, int k, double p)
{
    if (k < 0)
        throw std::invalid_argument("generation must be nonnegative");
    if (k == 0)
        return ray_point(f, p);
    const detail::Chain chain = detail::tower_chain(f.a(), k, p);
    // A chain landing exactly on a has lost the information needed to place
    // the point; its true position is beyond double resolution.
    if (chain.end != detail::ChainEnd::finite)
        return SpherePoint::infinity();
    const Complex z = chain.levels.back().value();
    return SpherePoint::finite(sigma == Sign::minus ? std::conj(z) : z);
}

PointSet SampledCurve::points() const
{
    std::vector<SpherePoint> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples)
        pts.push_back(s.point);
    return PointSet(std::move(pts), resolution);
}

PointSet SampledCurve::points_in(const Window& window) const
{
    std::vector<SpherePoint> pts;
    for (const auto& s : samples)
        if (window.contains(s.point))
            pts.push_back(s.point);
    return PointSet(std::move(pts), resolution);
}

double SampledCurve::max_gap_in(const Window& window) const
{
    double gap = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (window.contains(samples[i - 1].point) && window.contains(samples[i].point))
            gap = std::max(gap, chordal_dist(samples[i - 1].point, samples[i].point));
    return gap;
}

SampledCurve build_gamma(const ExpMap& f, Sign sigma, int k, double delta, const Window& window,
                         const GammaOptions& options)
{
    if (k < 0)
        throw std::invalid_argument("generation must be nonnegative");
    if (!(delta > 0.0))
        throw std::invalid_argument("resolution must be positive");
    window.validate();
    const double outside = options.outside_resolution > 0.0 ? options.outside_resolution : delta;

    auto result =
        detail::sample_curve({&f, sigma, k, {0.0, 0.0}}, delta, outside, window, options.max_samples);

    SampledCurve curve;
    curve.generation = k;
    curve.sign = sigma;
    curve.resolution = delta;
    curve.unresolved_gaps = result.unresolved_gaps;
    curve.samples = std::move(result.samples);
    if (k == 0) {
        // The tail converging to a rounds onto a itself; the ray is open there.
        std::erase_if(curve.samples,
                      [&](const CurveSample& s) { return s.point.is_finite() && s.point.re() >= f.a(); });
    }
    curve.truncation = detail::trim_tails(curve.samples, delta);
    if (result.budget_exceeded)
        throw RefinementBudgetExceeded("refinement budget exceeded for generation " +
                                           std::to_string(k),
                                       std::move(curve));
    return curve;
}

}  // namespace expdyn
