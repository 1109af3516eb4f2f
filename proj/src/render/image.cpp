#include "expdyn/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace expdyn {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("image dimensions must be positive");
    rgb_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    for (std::size_t i = 0; i < rgb_.size(); i += 3) {
        rgb_[i] = fill.r;
        rgb_[i + 1] = fill.g;
        rgb_[i + 2] = fill.b;
    }
}

Rgb Image::at(int x, int y) const
{
    if (x < 0 || y < 0 || x >= width_ || y >= height_)
        throw std::out_of_range("pixel outside image");
    const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(x)) * 3;
    return {rgb_[i], rgb_[i + 1], rgb_[i + 2]};
}

void Image::set(int x, int y, Rgb c)
{
    if (x < 0 || y < 0 || x >= width_ || y >= height_)
        throw std::out_of_range("pixel outside image");
    const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(x)) * 3;
    rgb_[i] = c.r;
    rgb_[i + 1] = c.g;
    rgb_[i + 2] = c.b;
}

void Image::blend(int x, int y, Rgb c, double alpha)
{
    if (x < 0 || y < 0 || x >= width_ || y >= height_)
        return;
    // Integer weights keep the result independent of FMA and rounding modes.
    const int w = static_cast<int>(std::lround(std::clamp(alpha, 0.0, 1.0) * 256.0));
    auto mix = [w](std::uint8_t dst, std::uint8_t src) {
        return static_cast<std::uint8_t>((src * w + dst * (256 - w) + 128) >> 8);
    };
    const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(x)) * 3;
    rgb_[i] = mix(rgb_[i], c.r);
    rgb_[i + 1] = mix(rgb_[i + 1], c.g);
    rgb_[i + 2] = mix(rgb_[i + 2], c.b);
}

Palette parse_palette(std::string_view name)
{
    if (name == "classic")
        return Palette::classic;
    if (name == "gray")
        return Palette::gray;
    throw std::invalid_argument("unknown palette: " + std::string(name));
}

ImageFormat parse_image_format(std::string_view name)
{
    if (name == "ppm")
        return ImageFormat::ppm;
    if (name == "png")
        return ImageFormat::png;
    throw std::invalid_argument("unknown image format: " + std::string(name));
}

std::string encode_ppm(const Image& image)
{
    std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) +
                      "\n255\n";
    out.append(image.bytes().begin(), image.bytes().end());
    return out;
}

Image decode_ppm(const std::string& bytes)
{
    std::istringstream in(bytes);
    std::string magic;
    int w = 0;
    int h = 0;
    int maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (!in || magic != "P6" || maxval != 255)
        throw std::invalid_argument("not a binary 8-bit PPM");
    in.get();
    Image image(w, h);
    const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
    std::string data(n, '\0');
    in.read(data.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::invalid_argument("truncated PPM data");
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                            static_cast<std::size_t>(x)) * 3;
            image.set(x, y,
                      {static_cast<std::uint8_t>(data[i]), static_cast<std::uint8_t>(data[i + 1]),
                       static_cast<std::uint8_t>(data[i + 2])});
        }
    return image;
}

std::string encode_png(const Image& image)
{
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw std::runtime_error("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng initialisation failed");
    }
    std::string out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG encoding failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), len);
        },
        nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
                 static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const auto stride = static_cast<std::size_t>(image.width()) * 3;
    for (int y = 0; y < image.height(); ++y)
        png_write_row(png, const_cast<png_bytep>(image.bytes().data() +
                                                 static_cast<std::size_t>(y) * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

std::string encode_image(const Image& image, ImageFormat format)
{
    return format == ImageFormat::png ? encode_png(image) : encode_ppm(image);
}

}  // namespace expdyn
