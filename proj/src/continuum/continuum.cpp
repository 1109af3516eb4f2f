#include "expdyn/continuum.hpp"

#include "refine.hpp"
#include "expdyn/parallel.hpp"
#include "expdyn/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expdyn {

PointSet ContinuumApprox::union_in_window() const
{
    PointSet out;
    for (const auto& c : curves)
        out.append(c.points_in(window));
    out.set_resolution(delta);
    return out;
}

PointSet ContinuumApprox::union_in_window(std::span<const int> generations) const
{
    PointSet out;
    for (const auto& c : curves)
        if (std::find(generations.begin(), generations.end(), c.generation) != generations.end())
            out.append(c.points_in(window));
    out.set_resolution(delta);
    return out;
}

ContinuumApprox build_continuum(const ExpMap& f, Sign sigma, int K, double delta,
                                const Window& window, const GammaOptions& options)
{
    if (K < 1)
        throw std::invalid_argument("K must be at least 1");
    ContinuumApprox approx;
    approx.sign = sigma;
    approx.window = window;
    approx.delta = delta;
    approx.curves.resize(static_cast<std::size_t>(K) + 1);
    // Deepest curves are the slowest; start them first.
    parallel_for(approx.curves.size(), [&](std::size_t i) {
        const int k = K - static_cast<int>(i);
        approx.curves[static_cast<std::size_t>(k)] = build_gamma(f, sigma, k, delta, window, options);
    });
    return approx;
}

std::vector<HausdorffEntry> hausdorff_report(const ContinuumApprox& approx)
{
    if (approx.curves.size() < 4)
        throw std::invalid_argument("Hausdorff report needs K >= 3");

    PointSet all = approx.union_in_window();
    all.push_back(SpherePoint::infinity());
    const auto all_tree = make_sphere_tree(all);

    std::vector<HausdorffEntry> report(approx.curves.size());
    parallel_for(report.size(), [&](std::size_t i) {
        const auto& curve = approx.curves[i];
        PointSet own = curve.points_in(approx.window);
        own.push_back(SpherePoint::infinity());
        const auto own_tree = make_sphere_tree(own);

        double worst = 0.0;
        for (const auto& p : own.points())
            worst = std::max(worst, all_tree.nearest_sq(to_unit_sphere(p)));
        for (const auto& p : all.points())
            worst = std::max(worst, own_tree.nearest_sq(to_unit_sphere(p)));
        report[i] = {curve.generation, std::sqrt(worst), approx.delta};
    });
    return report;
}

PointSet build_Y(const ExpMap& f, int K, double delta, const Window& window, int m_translates,
                 const GammaOptions& options)
{
    if (m_translates < 0)
        throw std::invalid_argument("m_translates must be nonnegative");
    if (K < 0)
        throw std::invalid_argument("K must be nonnegative");
    window.validate();
    const double outside = options.outside_resolution > 0.0 ? options.outside_resolution : delta;
    constexpr double pi = std::numbers::pi;

    struct Job {
        Sign sigma;
        int j;
        int k;
    };
    std::vector<Job> jobs;
    for (int j = -m_translates; j <= m_translates; ++j) {
        const double shift = 2.0 * pi * j;
        for (Sign sigma : {Sign::plus, Sign::minus}) {
            // Gamma^+ lies in 0 <= im <= pi, Gamma^- in -pi <= im <= 0.
            const double lo = (sigma == Sign::plus ? 0.0 : -pi) + shift;
            const double hi = (sigma == Sign::plus ? pi : 0.0) + shift;
            if (hi < window.y_min || lo > window.y_max)
                continue;
            for (int k = 0; k <= K; ++k)
                jobs.push_back({sigma, j, k});
        }
    }

    std::vector<std::vector<SpherePoint>> parts(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job job = jobs[i];
        const detail::CurveSpec spec{&f, job.sigma, job.k, {0.0, 2.0 * pi * job.j}};
        // Refine the translated curve itself so the window criterion applies
        // to the translated points.
        auto r = detail::sample_curve(spec, delta, outside, window, options.max_samples);
        if (r.budget_exceeded)
            throw ComputationError("refinement budget exceeded for generation " +
                                   std::to_string(job.k));
        for (const auto& s : r.samples) {
            if (!window.contains(s.point))
                continue;
            if (job.k == 0 && s.point.re() >= f.a())
                continue;
            parts[i].push_back(s.point);
        }
    });

    std::vector<SpherePoint> pts;
    for (auto& part : parts)
        pts.insert(pts.end(), part.begin(), part.end());
    return PointSet(std::move(pts), delta);
}

}  // namespace expdyn
