#include "expdyn/render.hpp"

#include "expdyn/parallel.hpp"
#include "expdyn/simd/kernels.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace expdyn {

namespace {

constexpr std::array<Rgb, 12> kClassic{{
    {25, 7, 26},
    {9, 1, 47},
    {4, 4, 73},
    {0, 7, 100},
    {12, 44, 138},
    {24, 82, 177},
    {57, 125, 209},
    {134, 181, 229},
    {211, 236, 248},
    {241, 233, 191},
    {248, 201, 95},
    {255, 170, 0},
}};

}  // namespace

void RenderConfig::validate() const
{
    window.validate();
    if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide)
        throw std::invalid_argument("image size must be between 1 and 8192 pixels per side");
    if (n_max < 0)
        throw std::invalid_argument("n_max must be nonnegative");
    if (!(r_escape > 0.0))
        throw std::invalid_argument("escape radius must be positive");
    if (tile < 1)
        throw std::invalid_argument("tile size must be positive");
    if (threads < 0)
        throw std::invalid_argument("thread count must be nonnegative");
}

Complex pixel_center(const RenderConfig& cfg, int x, int y) noexcept
{
    // Offsets from the window center in half-integer pixel units, so pixels
    // mirrored about the center get exactly negated offsets.
    const auto& w = cfg.window;
    const double sx = (w.x_max - w.x_min) / cfg.width;
    const double sy = (w.y_max - w.y_min) / cfg.height;
    const double cx = 0.5 * (w.x_min + w.x_max);
    const double cy = 0.5 * (w.y_min + w.y_max);
    const double ox = static_cast<double>(x) - 0.5 * static_cast<double>(cfg.width - 1);
    const double oy = 0.5 * static_cast<double>(cfg.height - 1) - static_cast<double>(y);
    return {cx + ox * sx, cy + oy * sy};
}

Rgb escape_color(Palette palette, std::int32_t step, int n_max) noexcept
{
    if (step == simd::kBounded)
        return {0, 0, 0};
    if (palette == Palette::gray) {
        const int span = std::max(n_max, 1);
        const int v = 255 - std::min(255, static_cast<int>(step) * 255 / span);
        const auto c = static_cast<std::uint8_t>(v);
        return {c, c, c};
    }
    return kClassic[static_cast<std::size_t>(step) % kClassic.size()];
}

Image render_escape(const ExpMap& f, const RenderConfig& cfg)
{
    cfg.validate();
    Image image(cfg.width, cfg.height);
    const int tiles_x = (cfg.width + cfg.tile - 1) / cfg.tile;
    const int tiles_y = (cfg.height + cfg.tile - 1) / cfg.tile;
    const simd::EscapeParams params{f.a(), cfg.r_escape, cfg.n_max};

    parallel_for(
        static_cast<std::size_t>(tiles_x) * static_cast<std::size_t>(tiles_y),
        [&](std::size_t t) {
            const int x0 = static_cast<int>(t % static_cast<std::size_t>(tiles_x)) * cfg.tile;
            const int y0 = static_cast<int>(t / static_cast<std::size_t>(tiles_x)) * cfg.tile;
            const int x1 = std::min(cfg.width, x0 + cfg.tile);
            const int y1 = std::min(cfg.height, y0 + cfg.tile);
            std::vector<double> re;
            std::vector<double> im;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    const Complex c = pixel_center(cfg, x, y);
                    re.push_back(c.real());
                    im.push_back(c.imag());
                }
            std::vector<std::int32_t> steps(re.size());
            simd::escape_steps(re, im, params, steps);
            std::size_t i = 0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    image.set(x, y, escape_color(cfg.palette, steps[i++], cfg.n_max));
        },
        static_cast<std::size_t>(cfg.threads));
    return image;
}

}  // namespace expdyn
