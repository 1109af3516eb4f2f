#pragma once

#include "expdyn/continuum.hpp"
#include "expdyn/rays.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace expdyn {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB raster, row 0 at the top (largest imaginary part).
class Image {
public:
    Image() = default;
    Image(int width, int height, Rgb fill = {});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    Rgb at(int x, int y) const;
    void set(int x, int y, Rgb c);
    /// Blends c over the pixel with coverage alpha in [0, 1].
    void blend(int x, int y, Rgb c, double alpha);
    const std::vector<std::uint8_t>& bytes() const noexcept { return rgb_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> rgb_;
};

enum class Palette { classic, gray };
enum class ImageFormat { ppm, png };

Palette parse_palette(std::string_view name);
ImageFormat parse_image_format(std::string_view name);

struct RenderConfig {
    Window window{-4.0, 4.0, -1.0, 4.0};
    int width = 512;
    int height = 512;
    int n_max = 64;
    double r_escape = 50.0;
    Palette palette = Palette::classic;
    ImageFormat format = ImageFormat::ppm;
    int tile = 64;
    /// 0 = all available threads.
    int threads = 0;

    static constexpr int kMaxSide = 8192;
    void validate() const;
};

/// Complex coordinate of the center of pixel (x, y).
Complex pixel_center(const RenderConfig& cfg, int x, int y) noexcept;

Rgb escape_color(Palette palette, std::int32_t step, int n_max) noexcept;

/// Colors each pixel by the escape step of its center. Tiles are computed in
/// parallel and written to disjoint pixels, so the bytes do not depend on
/// the thread count or the tile size.
Image render_escape(const ExpMap& f, const RenderConfig& cfg);

/// A polyline to draw; a break is started at every infinite point.
struct OverlayCurve {
    std::string label;
    /// Curve generation, -1 for rays and forests.
    int generation = -1;
    Sign sign = Sign::plus;
    std::vector<SpherePoint> points;
    /// Draw isolated points as dots instead of joining them.
    bool dots = false;
    Rgb color{255, 255, 255};
};

std::vector<OverlayCurve> overlay_from_curves(std::span<const SampledCurve> curves);
std::vector<OverlayCurve> overlay_from_forest(std::span<const ForestRow> rows);
OverlayCurve overlay_from_ray(const std::vector<RayPoint>& points, const std::string& label);

/// Reads an overlay file, detecting curve, forest or ray CSV by its header.
/// Errors name the offending line.
std::vector<OverlayCurve> load_overlay(const std::string& path);

/// Geometry of one overlaid curve inside the window.
struct OverlayEntry {
    std::string label;
    int generation = -1;
    Sign sign = Sign::plus;
    std::size_t points_in_window = 0;
    std::size_t pixels_drawn = 0;
    /// max |im - level| over the in-window points for the closest constant
    /// level, so 0 for a horizontal line.
    double flatness = 0.0;
    double level = 0.0;
    /// Sign changes of the real-part increment along the in-window points:
    /// each is a turning point of a fold.
    std::size_t turns = 0;
    /// Share of in-window points within 0.05 of the real axis or the lines
    /// im = +-pi.
    double near_lines = 0.0;
};

struct OverlayReport {
    std::vector<OverlayEntry> entries;
};

/// Draws anti-aliased polylines over the escape background (or over black
/// when background is false).
Image render_overlay(const ExpMap& f, const RenderConfig& cfg, std::span<const OverlayCurve> curves,
                     bool background, OverlayReport* report = nullptr);

std::string encode_ppm(const Image& image);
std::string encode_png(const Image& image);
std::string encode_image(const Image& image, ImageFormat format);
Image decode_ppm(const std::string& bytes);

}  // namespace expdyn
