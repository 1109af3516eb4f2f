#include "expdyn/numerics.hpp"
#include "expdyn/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace expdyn {

namespace {

// 2|p - q| / (sqrt(1+|p|^2) sqrt(1+|q|^2)) for |p| <= |q|, rewritten so that
// nothing overflows when |q| is huge.
double chordal_finite(Complex p, Complex q) noexcept
{
    double ap = std::abs(p);
    double aq = std::abs(q);
    if (ap > aq) {
        std::swap(p, q);
        std::swap(ap, aq);
    }
    if (aq <= 1.0)
        return 2.0 * std::abs(p - q) / (std::hypot(1.0, ap) * std::hypot(1.0, aq));
    if (ap >= 1.0) {
        // The metric is invariant under z -> 1/z.
        const Complex ip = 1.0 / p;
        const Complex iq = 1.0 / q;
        return 2.0 * std::abs(ip - iq) /
               (std::hypot(1.0, std::abs(ip)) * std::hypot(1.0, std::abs(iq)));
    }
    // |p| < 1 < |q|: divide numerator and the q factor by |q|.
    return 2.0 * std::abs(p / q - 1.0) / (std::hypot(1.0, ap) * std::hypot(1.0 / aq, 1.0));
}

}  // namespace

double chordal_dist(const SpherePoint& p, const SpherePoint& q) noexcept
{
    if (p.is_infinite() && q.is_infinite())
        return 0.0;
    if (p.is_infinite())
        return 2.0 / std::hypot(1.0, q.modulus());
    if (q.is_infinite())
        return 2.0 / std::hypot(1.0, p.modulus());
    if (p == q)
        return 0.0;
    return std::min(2.0, chordal_finite(p.value(), q.value()));
}

std::array<double, 3> to_unit_sphere(const SpherePoint& p) noexcept
{
    if (p.is_infinite())
        return {0.0, 0.0, 1.0};
    const double x = p.re();
    const double y = p.im();
    const double r = std::hypot(x, y);
    if (r <= 1.0) {
        const double s = 1.0 + r * r;
        return {2.0 * x / s, 2.0 * y / s, (r * r - 1.0) / s};
    }
    const double inv = 1.0 / r;
    const double s = 1.0 + inv * inv;
    return {2.0 * (x * inv) * inv / s, 2.0 * (y * inv) * inv / s, (1.0 - inv * inv) / s};
}

double directed_hausdorff(const PointSet& from, const PointSet& to)
{
    if (from.empty() || to.empty())
        throw ComputationError("empty point set");
    const SphereTree tree = make_sphere_tree(to);
    double worst = 0.0;
    for (const auto& p : from.points())
        worst = std::max(worst, tree.nearest_sq(to_unit_sphere(p)));
    return std::sqrt(worst);
}

double hausdorff_discrete(const PointSet& a, const PointSet& b)
{
    if (a.empty() || b.empty())
        throw ComputationError("empty point set");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

HausdorffEstimate hausdorff_estimate(const PointSet& a, const PointSet& b)
{
    return {hausdorff_discrete(a, b), a.resolution(), b.resolution()};
}

}  // namespace expdyn
