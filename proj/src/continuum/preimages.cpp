#include "expdyn/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expdyn {

namespace {

bool on_slit(const ExpMap& f, const SpherePoint& p)
{
    return p.is_finite() && p.im() == 0.0 && p.re() >= f.a();
}

}  // namespace

std::vector<long> PreimageForest::word(std::size_t i) const
{
    std::vector<long> w;
    for (auto node = static_cast<std::int64_t>(i); depth_of[static_cast<std::size_t>(node)] > 0;
         node = parent[static_cast<std::size_t>(node)])
        w.push_back(branch[static_cast<std::size_t>(node)]);
    return w;
}

std::size_t PreimageForest::root(std::size_t i) const
{
    while (depth_of[i] > 0)
        i = static_cast<std::size_t>(parent[i]);
    return i;
}

PointSet PreimageForest::points_up_to(int d) const
{
    std::vector<SpherePoint> pts;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (depth_of[i] <= d)
            pts.push_back(points[i]);
    return PointSet(std::move(pts), points.resolution());
}

PreimageForest build_preimage_forest(const ExpMap& f, const PointSet& Y0, int j, long k_max,
                                     const Window& window)
{
    if (j < 0)
        throw std::invalid_argument("depth must be nonnegative");
    if (k_max < 0)
        throw std::invalid_argument("k_max must be nonnegative");
    window.validate();

    PreimageForest forest;
    forest.depth = j;
    forest.k_max = k_max;
    forest.window = window;
    std::vector<SpherePoint> pts(Y0.points().begin(), Y0.points().end());
    forest.depth_of.assign(pts.size(), 0);
    forest.parent.assign(pts.size(), -1);
    forest.branch.assign(pts.size(), 0);
    auto add = [&](const SpherePoint& p, int depth, std::int64_t parent, long k) {
        pts.push_back(p);
        forest.depth_of.push_back(depth);
        forest.parent.push_back(parent);
        forest.branch.push_back(k);
        return pts.size() - 1;
    };

    // a - 1 lies on gamma_0 and L_k(a - 1) = (2k+1) pi i exactly.
    const Complex anchor{f.a() - 1.0, 0.0};
    std::optional<std::size_t> anchor_index;
    if (j > 0) {
        anchor_index = add(SpherePoint::finite(anchor), 0, -1, 0);
        for (long k = -k_max; k <= k_max; ++k) {
            const Complex z{0.0, static_cast<double>(2 * k + 1) * std::numbers::pi};
            if (window.contains(z))
                forest.gluing.push_back(add(SpherePoint::finite(z), 0, -1, 0));
        }
    }

    std::size_t begin = 0;
    std::size_t end = pts.size();
    for (int d = 1; d <= j; ++d) {
        for (std::size_t i = begin; i < end; ++i) {
            const SpherePoint w = pts[i];
            const bool is_anchor = anchor_index && i == *anchor_index;
            if (!window.contains(w) && !is_anchor)
                continue;
            if (on_slit(f, w)) {
                if (d == 1)
                    ++forest.dropped_on_slit;
                continue;
            }
            for (long k = -k_max; k <= k_max; ++k) {
                Complex z;
                if (is_anchor)
                    z = {0.0, static_cast<double>(2 * k + 1) * std::numbers::pi};
                else
                    z = inv_strip(f, k, w.value());
                if (!window.contains(z)) {
                    ++forest.outside_window;
                    continue;
                }
                const auto idx = add(SpherePoint::finite(z), d, static_cast<std::int64_t>(i), k);
                if (is_anchor)
                    forest.gluing.push_back(idx);
            }
        }
        begin = end;
        end = pts.size();
    }
    forest.points = PointSet(std::move(pts), Y0.resolution());
    return forest;
}

ConnectivityReport connectivity_probe(const PointSet& points, std::span<const double> eps_list,
                                      const Window& window)
{
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw std::invalid_argument("eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("eps list must be strictly decreasing");
    }
    // Points outside the window take part as links only: a set that is
    // connected through the margin must not split at the window edge.
    std::vector<SpherePoint> finite;
    std::vector<char> inside;
    for (const auto& p : points.points()) {
        if (p.is_infinite())
            continue;
        finite.push_back(p);
        inside.push_back(window.contains(p) ? 1 : 0);
    }
    const auto n_inside = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
    const PointSet linked(std::move(finite));

    ConnectivityReport report;
    report.resolution = points.resolution();
    std::optional<double> connected_down_to;
    bool still_connected = true;
    for (double eps : eps_list) {
        ConnectivityLevel level;
        level.eps = eps;
        level.points = n_inside;
        if (n_inside > 0) {
            const auto partition = eps_components(linked, eps, Metric::euclidean);
            std::vector<std::size_t> members(partition.count, 0);
            for (std::size_t i = 0; i < inside.size(); ++i)
                if (inside[i])
                    ++members[partition.labels[i]];
            level.components = static_cast<std::size_t>(
                std::count_if(members.begin(), members.end(), [](std::size_t m) { return m > 0; }));
            level.largest_share = static_cast<double>(*std::max_element(members.begin(), members.end())) /
                                  static_cast<double>(n_inside);
        }
        still_connected = still_connected && level.components == 1;
        if (still_connected)
            connected_down_to = eps;
        report.levels.push_back(level);
    }
    if (connected_down_to && report.resolution && *report.resolution > 0.0)
        report.connected_from_ratio = *connected_down_to / *report.resolution;
    return report;
}

DensityReport density_probe(const ExpMap& f, int j, const Window& window, int grid_n, long k_max,
                            std::optional<Complex> seed)
{
    if (j < 0 || j > 8)
        throw std::invalid_argument("density depth must be in [0, 8]");
    if (grid_n < 1 || grid_n > 512)
        throw std::invalid_argument("grid size must be in [1, 512]");
    if (k_max < 0)
        throw std::invalid_argument("k_max must be nonnegative");
    window.validate();

    Complex start = seed.value_or(Complex{-1.0, 0.0});
    if (!seed && !(start.real() < f.a()))
        start = {f.a() - 1.0, 0.0};
    if (start.imag() == 0.0 && start.real() >= f.a())
        throw std::invalid_argument("seed lies on the slit [a, inf)");

    const auto n = static_cast<std::size_t>(grid_n);
    constexpr int kUnhit = 1 << 20;
    std::vector<int> first_depth(n * n, kUnhit);
    const double cw = (window.x_max - window.x_min) / static_cast<double>(grid_n);
    const double ch = (window.y_max - window.y_min) / static_cast<double>(grid_n);
    DensityReport report;
    report.grid_n = n;

    auto mark = [&](Complex z, int depth) {
        ++report.points;
        if (!window.contains(z))
            return;
        const auto cx = std::min(n - 1, static_cast<std::size_t>((z.real() - window.x_min) / cw));
        const auto cy = std::min(n - 1, static_cast<std::size_t>((z.imag() - window.y_min) / ch));
        int& cell = first_depth[cy * n + cx];
        cell = std::min(cell, depth);
    };

    // Depth-first over branch words keeps memory linear in j.
    struct Frame {
        Complex z;
        int depth;
    };
    std::vector<Frame> stack{{start, 0}};
    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        mark(fr.z, fr.depth);
        if (fr.depth == j)
            continue;
        for (long k = k_max; k >= -k_max; --k)
            stack.push_back({inv_strip(f, k, fr.z), fr.depth + 1});
    }

    report.coverage.assign(static_cast<std::size_t>(j) + 1, 0.0);
    for (int d = 0; d <= j; ++d) {
        const auto hit = std::count_if(first_depth.begin(), first_depth.end(),
                                       [d](int c) { return c <= d; });
        report.coverage[static_cast<std::size_t>(d)] =
            static_cast<double>(hit) / static_cast<double>(n * n);
    }
    return report;
}

}  // namespace expdyn
