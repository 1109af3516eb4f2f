#include "refine.hpp"

#include "chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace expdyn::detail {

namespace {

constexpr int kMaxChartDepth = 32;
// L is treated as linear on a chord shorter than this fraction of its
// distance to a.
constexpr double kLinearRatio = 1e-3;

/// Local parametrization of a span of the curve by t.
struct Chart {
    enum class Kind { tower, chord, hairpin, fold };
    Kind kind = Kind::tower;
    int level = 1;
    // chord: straight segment on gamma_level
    Complex w0;
    Complex w1;
    // hairpin: a + e^ell (sinh(tau) + i) on gamma_level, mapped to level + 1
    double ell0 = 0.0;
    double ell1 = 0.0;
    double tau0 = 0.0;
    double tau1 = 0.0;
    // fold: a hairpin too thin to resolve, as its arms im = arm0 and
    // im = arm1 on level + 1 meeting at the tower parameter p_tip
    double p0 = 0.0;
    double p1 = 0.0;
    double p_tip = 0.0;
    double arm0 = 0.0;
    double arm1 = 0.0;
};

struct Node {
    double t;
    SpherePoint z;
    Chain chain;
};

double lerp(double x0, double x1, double t)
{
    return t == 1.0 ? x1 : x0 + t * (x1 - x0);
}

/// Distance from pole to the segment [wa, wb].
double segment_distance(Complex pole, Complex wa, Complex wb)
{
    const Complex d = wb - wa;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(pole - wa);
    const double s = std::clamp(std::real((pole - wa) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(pole - (wa + s * d));
}

bool crosses(const ChainPoint& p, const ChainPoint& q, double a)
{
    return (p.re - a > 0.0) != (q.re - a > 0.0) || p.re == a || q.re == a;
}

struct Refiner {
    const CurveSpec& spec;
    double delta;
    double outside;
    const Window& window;
    std::size_t max_samples;
    RefineResult& result;

    double a() const { return spec.f->a(); }

    Chain chart_chain(const Chart& chart, double t) const
    {
        switch (chart.kind) {
        case Chart::Kind::tower:
            return tower_chain(a(), spec.k, t);
        case Chart::Kind::chord: {
            const Complex w{lerp(chart.w0.real(), chart.w1.real(), t),
                            lerp(chart.w0.imag(), chart.w1.imag(), t)};
            return chain_from(chart.level, plain_point(w), a(), spec.k);
        }
        case Chart::Kind::hairpin:
            return chain_from(chart.level + 1,
                              hairpin_image(lerp(chart.ell0, chart.ell1, t),
                                            lerp(chart.tau0, chart.tau1, t)),
                              a(), spec.k);
        case Chart::Kind::fold: {
            const bool first = t < 0.5;
            const double p = first ? lerp(chart.p0, chart.p_tip, 2.0 * t)
                                   : lerp(chart.p_tip, chart.p1, 2.0 * t - 1.0);
            const TowerReal tw = tower_from_param(p);
            ChainPoint start;
            start.height = tw.height;
            start.rsign = tw.sign;
            start.re = tw.height > 0 ? tw.base : tw.sign * tw.base;
            start.im = first ? chart.arm0 : chart.arm1;
            return chain_from(chart.level + 1, start, a(), spec.k);
        }
        }
        return {};
    }

    SpherePoint place(Complex z) const
    {
        if (spec.sigma == Sign::minus)
            z = std::conj(z);
        return SpherePoint::finite(z + spec.shift);
    }

    std::optional<Node> eval(const Chart& chart, double t) const
    {
        if (spec.k == 0) {
            const auto z = gamma_point(*spec.f, Sign::plus, 0, t);
            return Node{t, z.is_finite() ? place(z.value()) : z, {}};
        }
        Chain chain = chart_chain(chart, t);
        if (chain.end == ChainEnd::hit_a)
            return std::nullopt;
        const SpherePoint z = chain.end == ChainEnd::infinite
                                  ? SpherePoint::infinity()
                                  : place(chain.levels.back().value());
        return Node{t, z, std::move(chain)};
    }

    /// Evaluates at t, stepping a few ulps toward `toward` past exact hits of a.
    std::optional<Node> eval_near(const Chart& chart, double t, double toward) const
    {
        for (int i = 0; i < 4; ++i) {
            if (auto node = eval(chart, t))
                return node;
            t = std::nextafter(t, toward);
            if (t == toward)
                break;
        }
        return std::nullopt;
    }

    bool touches(const SpherePoint& p, const SpherePoint& q) const
    {
        if (p.is_infinite() || q.is_infinite())
            return window.contains(p) || window.contains(q);
        const Complex z = p.value();
        const Complex v = q.value();
        return std::max(z.real(), v.real()) >= window.x_min &&
               std::min(z.real(), v.real()) <= window.x_max &&
               std::max(z.imag(), v.imag()) >= window.y_min &&
               std::min(z.imag(), v.imag()) <= window.y_max;
    }

    bool too_far(const SpherePoint& p, const SpherePoint& q, bool near) const
    {
        if (chordal_dist(p, q) > (near ? delta : outside))
            return true;
        return near && p.is_finite() && q.is_finite() && std::abs(p.value() - q.value()) > delta;
    }

    /// True when the chains pass a so closely that the pullback of the span
    /// bulges away from the chord of its endpoints: a fold that endpoint
    /// gaps cannot see.
    bool folds(const Chain& ca, const Chain& cb) const
    {
        if (ca.end != ChainEnd::finite || cb.end != ChainEnd::finite)
            return false;
        const Complex pole{a(), 0.0};
        for (int level = std::max(ca.first, cb.first); level < spec.k; ++level) {
            const auto ia = static_cast<std::size_t>(level - ca.first);
            const auto ib = static_cast<std::size_t>(level - cb.first);
            const ChainPoint& pa = ca.levels[ia];
            const ChainPoint& pb = cb.levels[ib];
            if (!pa.representable() || !pb.representable())
                continue;
            if (pa.tiny && pb.tiny) {
                if (crosses(pa, pb, a()))
                    return true;
                continue;
            }
            const Complex wa = pa.value();
            const Complex wb = pb.value();
            if (wa == wb)
                continue;
            const double dist = segment_distance(pole, wa, wb);
            if (dist == 0.0)
                return true;
            const double dip = std::log(std::min(std::abs(wa - pole), std::abs(wb - pole)) / dist);
            const ChainPoint& na = ca.levels[ia + 1];
            const ChainPoint& nb = cb.levels[ib + 1];
            if (!na.representable() || !nb.representable())
                continue;
            const double image = std::abs(na.value() - nb.value());
            if (dip > 1e-6 && dip > 0.5 * image)
                return true;
        }
        return false;
    }

    bool over_budget()
    {
        if (result.samples.size() >= max_samples)
            result.budget_exceeded = true;
        return result.budget_exceeded;
    }

    double param_of(const Chart& chart, const Node& node, double inherited) const
    {
        return chart.kind == Chart::Kind::tower ? node.t : inherited;
    }

    /// Emits samples strictly between left and right, then right itself if
    /// emit_right is set.
    void refine_span(const Chart& chart, const Node& left, Node right, double param, bool emit_right,
                     int depth)
    {
        std::vector<Node> pending;
        pending.push_back(std::move(right));
        Node current = left;
        while (!pending.empty()) {
            if (over_budget())
                return;
            const Node& next = pending.back();
            const bool near = touches(current.z, next.z);
            const bool gap = too_far(current.z, next.z, near);
            if (gap || folds(current.chain, next.chain)) {
                const double m = current.t + 0.5 * (next.t - current.t);
                if (m > current.t && m < next.t) {
                    if (auto mid = eval_near(chart, m, next.t); mid && mid->t < next.t) {
                        pending.push_back(std::move(*mid));
                        continue;
                    }
                }
                if (!split_chart(current, next, param_of(chart, current, param), depth) && gap &&
                    near)
                    ++result.unresolved_gaps;
            }
            if (pending.size() > 1 || emit_right)
                result.samples.push_back({param_of(chart, next, param), next.z});
            current = std::move(pending.back());
            pending.pop_back();
        }
    }

    /// Re-parametrizes a span the parameter can no longer split, at the first
    /// level where L stops being linear across it.
    bool split_chart(const Node& left, const Node& right, double param, int depth)
    {
        if (spec.k == 0 || depth >= kMaxChartDepth)
            return false;
        const Chain& ca = left.chain;
        const Chain& cb = right.chain;
        if (ca.end != ChainEnd::finite || cb.end != ChainEnd::finite)
            return false;
        const Complex pole{a(), 0.0};
        for (int level = std::max(ca.first, cb.first); level < spec.k; ++level) {
            const ChainPoint& pa = ca.levels[static_cast<std::size_t>(level - ca.first)];
            const ChainPoint& pb = cb.levels[static_cast<std::size_t>(level - cb.first)];
            if (!pa.representable() || !pb.representable())
                continue;
            Chart sub;
            if (pa.tiny && pb.tiny) {
                const bool cross = crosses(pa, pb, a());
                const double dxa = pa.re - a();
                const double dxb = pb.re - a();
                if (!std::isfinite(pa.im) || !std::isfinite(pb.im)) {
                    if (dxa == 0.0 || dxb == 0.0)
                        continue;
                    const double ra = std::log(std::abs(dxa));
                    const double rb = std::log(std::abs(dxb));
                    if (!cross && std::abs(ra - rb) <= kLinearRatio)
                        continue;
                    sub.kind = Chart::Kind::fold;
                    sub.level = level;
                    sub.p0 = param_from_u(ra);
                    sub.p1 = param_from_u(rb);
                    sub.p_tip = cross ? -(static_cast<double>(spec.k) + 4.0)
                                      : 0.5 * (sub.p0 + sub.p1);
                    sub.arm0 = dxa < 0.0 ? std::numbers::pi : 0.0;
                    sub.arm1 = dxb < 0.0 ? std::numbers::pi : 0.0;
                } else {
                    const double ta = hairpin_tau(dxa, pa.im);
                    const double tb = hairpin_tau(dxb, pb.im);
                    if (!cross && std::abs(ta - tb) <= kLinearRatio &&
                        std::abs(pa.im - pb.im) <= kLinearRatio)
                        continue;
                    sub.kind = Chart::Kind::hairpin;
                    sub.level = level;
                    sub.ell0 = pa.im;
                    sub.ell1 = pb.im;
                    sub.tau0 = ta;
                    sub.tau1 = tb;
                }
            } else {
                const Complex wa = pa.value();
                const Complex wb = pb.value();
                const double len = std::abs(wb - wa);
                if (len == 0.0 || len <= kLinearRatio * segment_distance(pole, wa, wb))
                    continue;
                sub.kind = Chart::Kind::chord;
                sub.level = level;
                sub.w0 = wa;
                sub.w1 = wb;
            }
            auto start = eval(sub, 0.0);
            auto end = eval(sub, 1.0);
            if (!start || !end)
                return false;
            refine_span(sub, *start, std::move(*end), param, false, depth + 1);
            return true;
        }
        return false;
    }
};

}  // namespace

RefineResult sample_curve(const CurveSpec& spec, double delta, double outside,
                          const Window& window, std::size_t max_samples)
{
    RefineResult result;
    Refiner refiner{spec, delta, outside, window, max_samples, result};
    const Chart chart;
    const double p_max = static_cast<double>(spec.k) + 4.0;
    const auto cells = static_cast<std::size_t>(std::ceil(p_max * 16.0));
    const double step = 2.0 * p_max / static_cast<double>(cells);

    std::optional<Node> previous;
    for (std::size_t i = 0; i <= cells; ++i) {
        const double p = i == cells ? p_max : -p_max + step * static_cast<double>(i);
        auto node = refiner.eval_near(chart, p, p_max);
        if (!node)
            continue;
        if (!previous)
            result.samples.push_back({node->t, node->z});
        else
            refiner.refine_span(chart, *previous, *node, 0.0, true, 0);
        if (result.budget_exceeded)
            break;
        previous = std::move(node);
    }
    return result;
}

double trim_tails(std::vector<CurveSample>& samples, double delta)
{
    const auto inf = SpherePoint::infinity();
    auto to_inf = [&](std::size_t i) { return chordal_dist(samples[i].point, inf); };
    const std::size_t n = samples.size();
    if (n == 0)
        return 0.0;

    std::size_t lo = 0;
    while (lo + 1 < n && to_inf(lo + 1) <= delta)
        ++lo;
    std::size_t hi = n - 1;
    while (hi > lo && to_inf(hi - 1) <= delta)
        --hi;
    if (lo < hi && samples[lo].point.is_infinite())
        ++lo;
    if (hi > lo && samples[hi].point.is_infinite())
        --hi;

    double truncation = 0.0;
    if (lo > 0 || to_inf(lo) <= delta)
        truncation = std::max(truncation, to_inf(lo));
    if (hi + 1 < n || to_inf(hi) <= delta)
        truncation = std::max(truncation, to_inf(hi));

    samples.erase(samples.begin() + static_cast<std::ptrdiff_t>(hi) + 1, samples.end());
    samples.erase(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(lo));
    return truncation;
}

}  // namespace expdyn::detail
