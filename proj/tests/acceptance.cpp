// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "expdyn/continuum.hpp"
#include "expdyn/rays.hpp"
#include "expdyn/render.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace expdyn;

namespace {

constexpr double kPi = std::numbers::pi;
const Window kStandard{-4.0, 4.0, -1.0, 4.0};
constexpr double kDelta = 0.01;

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... Args>
std::string fmt(const char* format, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double rel(Complex got, Complex want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Complex value_of(const ExtendedValue& v)
{
    const auto* p = std::get_if<SpherePoint>(&v);
    return p && p->is_finite() ? p->value() : Complex(INFINITY, INFINITY);
}

Outcome inverse_roundtrip()
{
    constexpr int kPoints = 100'000;
    double worst = 0.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> log_r(-4.0, 6.0);
    std::uniform_real_distribution<double> half(0.0, kPi);
    std::uniform_real_distribution<double> full(-kPi, kPi);
    for (double a : {-0.9, 0.0, 1.0}) {
        const ExpMap f(a);
        for (Sign s : {Sign::plus, Sign::minus})
            for (int i = 0; i < kPoints; ++i) {
                const Complex w = Complex(a, 0.0) + std::polar(std::exp(log_r(rng)), sign_factor(s) * half(rng));
                worst = std::max(worst, rel(value_of(apply(f, inv_halfplane(f, s, w))), w));
            }
        for (int i = 0; i < kPoints; ++i) {
            const Complex w = Complex(a, 0.0) + std::polar(std::exp(log_r(rng)), full(rng));
            if (w.imag() == 0.0 && w.real() >= a)
                continue;
            const long k = static_cast<long>(i % 17) - 8;
            worst = std::max(worst, rel(value_of(apply(f, inv_strip(f, k, w))), w));
        }
    }
    return {worst <= 1e-12, fmt("max relative error %.2e", worst)};
}

Outcome gamma_one_lines()
{
    const ExpMap f(0.0);
    double worst = 0.0;
    std::size_t samples = 0;
    for (Sign s : {Sign::plus, Sign::minus}) {
        const Window w = s == Sign::plus ? kStandard : kStandard.conjugate();
        for (const auto& smp : build_gamma(f, s, 1, kDelta, w).samples) {
            if (!smp.point.is_finite())
                continue;
            worst = std::max(worst, std::abs(smp.point.im() - sign_factor(s) * kPi));
            ++samples;
        }
    }
    return {samples > 0 && worst <= 1e-9, fmt("%zu samples, max |im - sigma pi| %.2e", samples, worst)};
}

Outcome conjugation()
{
    const ExpMap f(0.0);
    double worst = 0.0;
    bool aligned = true;
    for (int k = 0; k <= 10; ++k) {
        const auto plus = build_gamma(f, Sign::plus, k, kDelta, kStandard);
        const auto minus = build_gamma(f, Sign::minus, k, kDelta, kStandard.conjugate());
        if (plus.samples.size() != minus.samples.size()) {
            aligned = false;
            continue;
        }
        for (std::size_t i = 0; i < plus.samples.size(); ++i)
            worst = std::max(worst, chordal_dist(minus.samples[i].point, conj(plus.samples[i].point)));
    }
    return {aligned && worst <= 1e-12, fmt("samples aligned: %s, max chordal %.2e", aligned ? "yes" : "no", worst)};
}

Outcome hausdorff_convergence()
{
    const ExpMap f(0.0);
    const auto d = hausdorff_report(build_continuum(f, Sign::plus, 12, kDelta, kStandard));
    const auto h = hausdorff_report(build_continuum(f, Sign::plus, 12, kDelta / 2, kStandard));
    double worst_increase = -INFINITY;
    for (std::size_t k = 0; k < d.size(); ++k)
        worst_increase = std::max(worst_increase, h[k].distance - d[k].distance);
    const double limit = 3 * kDelta + 0.05;
    const bool shrinks = d[10].distance < d[2].distance;
    const bool small = d[12].distance <= limit;
    const bool stable = worst_increase <= kDelta;
    return {shrinks && small && stable,
            fmt("d_2 %.3f, d_10 %.3f, d_12 %.3f (limit %.3f), max increase at delta/2 %.4f", d[2].distance,
                d[10].distance, d[12].distance, limit, worst_increase)};
}

Outcome connectivity()
{
    const ExpMap f(0.0);
    const std::vector<double> eps{5 * kDelta};
    const auto gamma = build_continuum(f, Sign::plus, 12, kDelta, kStandard);
    const auto whole = connectivity_probe(gamma.union_in_window(), eps, kStandard).levels[0].components;

    const auto lines = connectivity_probe(build_Y(f, 1, kDelta, kStandard, 2), eps, kStandard).levels[0].components;

    // Y and its forest are sampled on a margin so that pieces leaving the
    // window and coming back are not counted twice.
    const Window padded{kStandard.x_min - 1, kStandard.x_max + 1, kStandard.y_min - 1, kStandard.y_max + 1};
    const auto forest = build_preimage_forest(f, build_Y(f, 12, kDelta, padded, 2), 2, 2, padded);
    std::string per_depth;
    bool forest_ok = true;
    for (int depth = 0; depth <= 2; ++depth) {
        const auto c = connectivity_probe(forest.points_up_to(depth), eps, kStandard).levels[0].components;
        per_depth += (depth ? "/" : "") + std::to_string(c);
        forest_ok = forest_ok && c == 1;
    }
    return {whole == 1 && lines >= 2 && forest_ok,
            fmt("Gamma+ %zu, gamma_0 u gamma_1 u translates %zu, Y + forest by depth %s, gluing points %zu", whole,
                lines, per_depth.c_str(), forest.gluing.size())};
}

Outcome density()
{
    const auto r = density_probe(ExpMap(0.0), 6, Window{-4, 4, -4, 4}, 128, 6);
    const bool monotone = std::is_sorted(r.coverage.begin(), r.coverage.end());
    std::ostringstream cov;
    for (std::size_t d = 0; d < r.coverage.size(); ++d)
        cov << (d ? " " : "") << fmt("%.4f", r.coverage[d]);
    return {monotone && r.fraction() >= 0.5,
            fmt("coverage by depth %s, nondecreasing: %s", cov.str().c_str(), monotone ? "yes" : "no")};
}

Outcome real_axis()
{
    int bounded = 0;
    for (double a : {-0.9, -0.5, 0.0, 1.0})
        for (double x : {-1e6, -10.0, 0.0, 10.0})
            bounded += orbit(ExpMap(a), {x, 0.0}, 64).bounded() ? 1 : 0;
    return {bounded == 0, fmt("%d of 16 orbits bounded", bounded)};
}

Outcome ray_consistency()
{
    const ExpMap f(0.0);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> entry(-3, 3);
    std::uniform_int_distribution<int> len(0, 4);
    std::vector<double> ts;
    for (int i = 0; i < 40; ++i)
        ts.push_back(0.1 + 3.9 * i / 39.0);
    std::vector<double> next;
    for (double t : ts)
        next.push_back(transport(f, t));

    double shift = 0.0;
    double gap = 0.0;
    std::size_t mismatches = 0;
    for (int n = 0; n < 20; ++n) {
        std::vector<long> head(static_cast<std::size_t>(len(rng)));
        std::vector<long> period(static_cast<std::size_t>(len(rng) + 1));
        for (auto& e : head)
            e = entry(rng);
        for (auto& e : period)
            e = entry(rng);
        const Address s(head, Address::Tail::periodic, period);
        const auto trace = trace_ray(f, s, ts);
        const auto image = trace_ray(f, s.shifted(), next);
        gap = std::max({gap, trace.max_gap(), image.max_gap()});
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto fz = apply(f, trace.points[i].z.value());
            const auto* w = std::get_if<SpherePoint>(&fz);
            shift = std::max(shift, w ? chordal_dist(*w, image.points[i].z) : INFINITY);
            const int trusted = trusted_prefix(f, ts[i]);
            const auto it = itinerary(f, trace.points[i].z.value(), trusted);
            for (int j = 0; j < trusted; ++j) {
                const auto idx = static_cast<std::size_t>(j);
                if (idx >= it.entries.size() || it.entries[idx] != s.at(idx))
                    ++mismatches;
            }
        }
    }
    return {shift <= 1e-8 && mismatches == 0 && gap <= 1e-10,
            fmt("max shift error %.2e, itinerary mismatches %zu, max gap %.2e", shift, mismatches, gap)};
}

Outcome render_determinism()
{
    const ExpMap f(0.0);
    RenderConfig cfg;
    const auto parallel = encode_ppm(render_escape(f, cfg));
    const auto again = encode_ppm(render_escape(f, cfg));
    cfg.threads = 1;
    cfg.tile = cfg.width;
    const auto serial = encode_ppm(render_escape(f, cfg));
    return {parallel == serial && parallel == again,
            fmt("%zu bytes, tiled == serial: %s, repeat identical: %s", parallel.size(),
                parallel == serial ? "yes" : "no", parallel == again ? "yes" : "no")};
}

Outcome overlay_structure()
{
    const ExpMap f(0.0);
    RenderConfig cfg;
    const auto approx = build_continuum(f, Sign::plus, 8, kDelta, cfg.window);
    OverlayReport report;
    render_overlay(f, cfg, overlay_from_curves(approx.curves), true, &report);
    bool real_ray = false;
    bool pi_line = false;
    int folded = 0;
    for (const auto& e : report.entries) {
        if (e.points_in_window == 0)
            continue;
        if (e.generation == 0 && e.flatness == 0.0 && e.level == 0.0)
            real_ray = true;
        else if (e.generation == 1 && e.flatness <= 1e-9 && std::abs(e.level - kPi) <= 1e-9)
            pi_line = true;
        else if (e.generation >= 2 && e.turns >= 1 && e.near_lines > 0.0)
            ++folded;
    }
    return {real_ray && pi_line && folded >= 6, fmt("real ray: %s, line at pi: %s, folded curves %d",
                                                      real_ray ? "yes" : "no", pi_line ? "yes" : "no", folded)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "inverse branch roundtrip", 5, inverse_roundtrip},
        {2, "gamma_1 lines", 1, gamma_one_lines},
        {3, "conjugation symmetry", 30, conjugation},
        {4, "Hausdorff convergence", 120, hausdorff_convergence},
        {5, "connectivity signature", 120, connectivity},
        {6, "density of preimages", 120, density},
        {7, "real axis escape", 1, real_axis},
        {8, "ray consistency", 60, ray_consistency},
        {9, "renderer determinism", 30, render_determinism},
        {10, "overlay structure", 60, overlay_structure},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = out.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("criterion %2d %-26s %s  %s; %.2f s (limit %.0f s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    out.detail.c_str(), secs, c.limit_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
