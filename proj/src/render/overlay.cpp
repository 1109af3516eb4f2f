#include "expdyn/render.hpp"

#include "expdyn/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace expdyn {

namespace {

// Sub-pixel positions are fixed point with this many steps per pixel, so the
// rasterizer is integer arithmetic and exactly mirror-symmetric.
constexpr std::int64_t kSub = 256;
constexpr double kMargin = 2.0;
constexpr double kLineBand = 0.05;

constexpr std::array<Rgb, 7> kGenerationColors{{
    {255, 80, 80},
    {255, 170, 40},
    {230, 230, 60},
    {80, 220, 110},
    {60, 200, 230},
    {110, 130, 255},
    {220, 110, 240},
}};

Rgb generation_color(int generation)
{
    if (generation <= 1)
        return {255, 255, 255};
    return kGenerationColors[static_cast<std::size_t>(generation - 2) % kGenerationColors.size()];
}

std::int64_t round_div(std::int64_t num, std::int64_t den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t half = den / 2;
    return num >= 0 ? (num + half) / den : -((-num + half) / den);
}

std::int64_t floor_div(std::int64_t num, std::int64_t den)
{
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0)))
        --q;
    return q;
}

/// Per-curve coverage in 1/256 units; max-combined so overlapping samples of
/// one curve do not darken each other.
class Coverage {
public:
    Coverage(int w, int h) : w_(w), h_(h), cov_(static_cast<std::size_t>(w) * h, 0) {}

    void deposit(std::int64_t col, std::int64_t row, std::int64_t amount)
    {
        if (col < 0 || row < 0 || col >= w_ || row >= h_ || amount <= 0)
            return;
        auto& c = cov_[static_cast<std::size_t>(row) * static_cast<std::size_t>(w_) +
                       static_cast<std::size_t>(col)];
        c = static_cast<std::uint16_t>(std::max<std::int64_t>(c, std::min<std::int64_t>(amount, kSub)));
    }

    int width() const { return w_; }
    int height() const { return h_; }
    const std::vector<std::uint16_t>& values() const { return cov_; }

private:
    int w_;
    int h_;
    std::vector<std::uint16_t> cov_;
};

/// Pixel-space geometry: offsets from the image center in pixels, with y
/// pointing down.
struct Frame {
    double cx;
    double cy;
    double sx;
    double sy;
    int w;
    int h;

    std::array<double, 2> offset(Complex z) const { return {(z.real() - cx) / sx, (cy - z.imag()) / sy}; }
    // Fixed-point coordinate of pixel index i along an axis with n pixels.
    static std::int64_t center(std::int64_t i, int n) { return kSub * i - kSub / 2 * (n - 1); }
    static std::int64_t index_base(int n) { return kSub / 2 * (n - 1); }
};

/// Liang-Barsky clip of p0 + t (p1 - p0) to |x| <= bx, |y| <= by.
bool clip(std::array<double, 2>& p0, std::array<double, 2>& p1, double bx, double by)
{
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = p1[0] - p0[0];
    const double dy = p1[1] - p0[1];
    const std::array<double, 4> p{-dx, dx, -dy, dy};
    const std::array<double, 4> q{p0[0] + bx, bx - p0[0], p0[1] + by, by - p0[1]};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0)
                return false;
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0)
            t0 = std::max(t0, r);
        else
            t1 = std::min(t1, r);
        if (t0 > t1)
            return false;
    }
    const std::array<double, 2> a{p0[0] + t0 * dx, p0[1] + t0 * dy};
    const std::array<double, 2> b{p0[0] + t1 * dx, p0[1] + t1 * dy};
    p0 = a;
    p1 = b;
    return true;
}

/// Sweeps the pixel centers of one axis that lie within the segment and
/// splits each crossing between the two nearest pixels of the other axis.
void sweep(Coverage& cov, std::int64_t u0, std::int64_t v0, std::int64_t u1, std::int64_t v1,
           bool u_is_x)
{
    if (u0 == u1)
        return;
    const int nu = u_is_x ? cov.width() : cov.height();
    const int nv = u_is_x ? cov.height() : cov.width();
    const std::int64_t lo = std::min(u0, u1);
    const std::int64_t hi = std::max(u0, u1);
    const std::int64_t base_u = Frame::index_base(nu);
    const std::int64_t base_v = Frame::index_base(nv);
    const std::int64_t first = std::max<std::int64_t>(0, -floor_div(-(lo + base_u), kSub));
    const std::int64_t last = std::min<std::int64_t>(nu - 1, floor_div(hi + base_u, kSub));
    for (std::int64_t i = first; i <= last; ++i) {
        const std::int64_t u = Frame::center(i, nu);
        const std::int64_t v = v0 + round_div((u - u0) * (v1 - v0), u1 - u0);
        const std::int64_t r = v + base_v;
        const std::int64_t j = floor_div(r, kSub);
        const std::int64_t frac = r - j * kSub;
        if (u_is_x) {
            cov.deposit(i, j, kSub - frac);
            cov.deposit(i, j + 1, frac);
        } else {
            cov.deposit(j, i, kSub - frac);
            cov.deposit(j + 1, i, frac);
        }
    }
}

std::int64_t to_fixed(double x)
{
    return static_cast<std::int64_t>(std::llround(x * static_cast<double>(kSub)));
}

void draw_segment(Coverage& cov, const Frame& fr, Complex a, Complex b)
{
    auto p0 = fr.offset(a);
    auto p1 = fr.offset(b);
    if (!clip(p0, p1, 0.5 * fr.w + kMargin, 0.5 * fr.h + kMargin))
        return;
    const auto x0 = to_fixed(p0[0]);
    const auto y0 = to_fixed(p0[1]);
    const auto x1 = to_fixed(p1[0]);
    const auto y1 = to_fixed(p1[1]);
    // Both sweeps, so no direction leaves gaps.
    sweep(cov, x0, y0, x1, y1, true);
    sweep(cov, y0, x0, y1, x1, false);
}

void draw_dot(Coverage& cov, const Frame& fr, Complex z)
{
    const auto p = fr.offset(z);
    const double bx = 0.5 * fr.w + kMargin;
    const double by = 0.5 * fr.h + kMargin;
    if (std::abs(p[0]) > bx || std::abs(p[1]) > by)
        return;
    const std::int64_t cx = to_fixed(p[0]) + Frame::index_base(fr.w);
    const std::int64_t cy = to_fixed(p[1]) + Frame::index_base(fr.h);
    const std::int64_t i = floor_div(cx, kSub);
    const std::int64_t j = floor_div(cy, kSub);
    const std::int64_t fx = cx - i * kSub;
    const std::int64_t fy = cy - j * kSub;
    cov.deposit(i, j, (kSub - fx) * (kSub - fy) / kSub);
    cov.deposit(i + 1, j, fx * (kSub - fy) / kSub);
    cov.deposit(i, j + 1, (kSub - fx) * fy / kSub);
    cov.deposit(i + 1, j + 1, fx * fy / kSub);
}

OverlayEntry describe(const OverlayCurve& curve, const Window& window)
{
    OverlayEntry e;
    e.label = curve.label;
    e.generation = curve.generation;
    e.sign = curve.sign;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t near = 0;
    int last_dir = 0;
    const SpherePoint* prev = nullptr;
    for (const auto& p : curve.points) {
        if (!window.contains(p)) {
            prev = nullptr;
            continue;
        }
        ++e.points_in_window;
        lo = std::min(lo, p.im());
        hi = std::max(hi, p.im());
        const double y = std::abs(p.im());
        if (y <= kLineBand || std::abs(y - std::numbers::pi) <= kLineBand)
            ++near;
        if (prev && !curve.dots) {
            const double d = p.re() - prev->re();
            const int dir = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (dir != 0) {
                if (last_dir != 0 && dir != last_dir)
                    ++e.turns;
                last_dir = dir;
            }
        }
        prev = &p;
    }
    if (e.points_in_window > 0) {
        e.level = 0.5 * (lo + hi);
        e.flatness = 0.5 * (hi - lo);
        e.near_lines = static_cast<double>(near) / static_cast<double>(e.points_in_window);
    }
    return e;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::vector<OverlayCurve> overlay_from_curves(std::span<const SampledCurve> curves)
{
    std::vector<OverlayCurve> out;
    for (const auto& c : curves) {
        OverlayCurve o;
        o.label = std::string("gamma_") + std::to_string(c.generation) + sign_char(c.sign);
        o.generation = c.generation;
        o.sign = c.sign;
        o.color = generation_color(c.generation);
        for (const auto& s : c.samples)
            o.points.push_back(s.point);
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<OverlayCurve> overlay_from_forest(std::span<const ForestRow> rows)
{
    OverlayCurve o;
    o.label = "forest";
    o.dots = true;
    o.color = {255, 60, 60};
    for (const auto& r : rows)
        o.points.push_back(r.point);
    return {o};
}

OverlayCurve overlay_from_ray(const std::vector<RayPoint>& points, const std::string& label)
{
    OverlayCurve o;
    o.label = label;
    o.color = {255, 230, 0};
    for (const auto& p : points)
        o.points.push_back(p.z);
    return o;
}

std::vector<OverlayCurve> load_overlay(const std::string& path)
{
    const std::string content = read_file(path);
    const auto rows = text::lines(content);
    const auto header = rows.empty() ? std::string_view{} : text::trim(rows[0]);
    try {
        if (header == "generation,sign,param,re,im")
            return overlay_from_curves(curves_from_csv(content));
        if (header == "depth,branch_word,re,im")
            return overlay_from_forest(forest_from_csv(content));
        if (header == "t,re,im,depth,gap")
            return {overlay_from_ray(ray_points_from_csv(content), path)};
        text::fail_at_line(1, "unrecognised overlay header");
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Image render_overlay(const ExpMap& f, const RenderConfig& cfg, std::span<const OverlayCurve> curves,
                     bool background, OverlayReport* report)
{
    cfg.validate();
    Image image = background ? render_escape(f, cfg) : Image(cfg.width, cfg.height);
    const auto& w = cfg.window;
    const Frame fr{0.5 * (w.x_min + w.x_max), 0.5 * (w.y_min + w.y_max),
                   (w.x_max - w.x_min) / cfg.width, (w.y_max - w.y_min) / cfg.height, cfg.width,
                   cfg.height};

    // Curves of one color share a layer (max coverage), so the result does
    // not depend on the order within a color.
    std::vector<Rgb> layer_colors;
    std::vector<Coverage> layers;
    if (report)
        report->entries.clear();

    for (const auto& curve : curves) {
        auto it = std::find(layer_colors.begin(), layer_colors.end(), curve.color);
        if (it == layer_colors.end()) {
            layer_colors.push_back(curve.color);
            layers.emplace_back(cfg.width, cfg.height);
            it = layer_colors.end() - 1;
        }
        Coverage own(cfg.width, cfg.height);
        const SpherePoint* prev = nullptr;
        for (const auto& p : curve.points) {
            if (p.is_infinite()) {
                prev = nullptr;
                continue;
            }
            if (curve.dots)
                draw_dot(own, fr, p.value());
            else if (prev)
                draw_segment(own, fr, prev->value(), p.value());
            else
                draw_dot(own, fr, p.value());
            prev = &p;
        }
        auto& layer = layers[static_cast<std::size_t>(it - layer_colors.begin())];
        std::size_t drawn = 0;
        for (int y = 0; y < cfg.height; ++y)
            for (int x = 0; x < cfg.width; ++x) {
                const auto v = own.values()[static_cast<std::size_t>(y) * cfg.width + x];
                if (v > 0) {
                    ++drawn;
                    layer.deposit(x, y, v);
                }
            }
        if (report) {
            auto entry = describe(curve, w);
            entry.pixels_drawn = drawn;
            report->entries.push_back(std::move(entry));
        }
    }

    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& cov = layers[l].values();
        for (int y = 0; y < cfg.height; ++y)
            for (int x = 0; x < cfg.width; ++x) {
                const auto v = cov[static_cast<std::size_t>(y) * cfg.width + x];
                if (v > 0)
                    image.blend(x, y, layer_colors[l], static_cast<double>(v) / kSub);
            }
    }
    return image;
}

}  // namespace expdyn
