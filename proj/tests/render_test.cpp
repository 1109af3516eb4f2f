#include "expdyn/render.hpp"
#include "expdyn/simd/kernels.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace expdyn;

namespace {

constexpr double kPi = std::numbers::pi;

RenderConfig small_config()
{
    RenderConfig cfg;
    cfg.width = 96;
    cfg.height = 80;
    cfg.tile = 16;
    return cfg;
}

std::string write_temp(const std::string& name, const std::string& content)
{
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

}  // namespace

TEST_CASE("render config validation")
{
    RenderConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.width = 8193;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.width = 16;
    cfg.window = Window{0, 0, 0, 1};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.window = Window{};
    cfg.tile = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(parse_palette("gray") == Palette::gray);
    CHECK(parse_image_format("png") == ImageFormat::png);
    CHECK_THROWS_AS(parse_palette("rainbow"), std::invalid_argument);
    CHECK_THROWS_AS(parse_image_format("gif"), std::invalid_argument);
}

TEST_CASE("pixel centers are symmetric about the window center")
{
    RenderConfig cfg;
    cfg.window = Window{-2, 2, -3, 3};
    cfg.width = 7;
    cfg.height = 6;
    CHECK(pixel_center(cfg, 3, 0).real() == 0.0);
    for (int y = 0; y < cfg.height; ++y)
        for (int x = 0; x < cfg.width; ++x) {
            const auto p = pixel_center(cfg, x, y);
            const auto q = pixel_center(cfg, cfg.width - 1 - x, cfg.height - 1 - y);
            CHECK(p == -q);
        }
    CHECK(pixel_center(cfg, 0, 0).imag() == doctest::Approx(2.5));
    CHECK(pixel_center(cfg, 0, 0).real() == doctest::Approx(-2.0 + 2.0 / 7.0));
}

TEST_CASE("single pixel at the origin escapes at step 4")
{
    RenderConfig cfg;
    cfg.window = Window{-1, 1, -1, 1};
    cfg.width = 1;
    cfg.height = 1;
    cfg.n_max = 10;
    const auto img = render_escape(ExpMap(0.0), cfg);
    CHECK(img.at(0, 0) == escape_color(Palette::classic, 4, 10));
    CHECK_FALSE(img.at(0, 0) == escape_color(Palette::classic, expdyn::simd::kBounded, 10));
    cfg.n_max = 3;
    CHECK(render_escape(ExpMap(0.0), cfg).at(0, 0) == Rgb{0, 0, 0});
}

TEST_CASE("the real axis row escapes everywhere")
{
    RenderConfig cfg;
    cfg.window = Window{-50, 20, -1, 1};
    cfg.width = 301;
    cfg.height = 5;
    for (double a : {-0.9, 0.0, 1.0}) {
        const auto img = render_escape(ExpMap(a), cfg);
        REQUIRE(pixel_center(cfg, 0, 2).imag() == 0.0);
        for (int x = 0; x < cfg.width; ++x)
            CHECK_FALSE(img.at(x, 2) == Rgb{0, 0, 0});
    }
}

TEST_CASE("rendering is independent of tiling and threads")
{
    RenderConfig cfg = small_config();
    const ExpMap f(0.0);
    const auto base = encode_ppm(render_escape(f, cfg));
    CHECK(encode_ppm(render_escape(f, cfg)) == base);
    for (int tile : {1, 7, 33, 512})
        for (int threads : {0, 1, 3}) {
            cfg.tile = tile;
            cfg.threads = threads;
            CHECK(encode_ppm(render_escape(f, cfg)) == base);
        }
    cfg.palette = Palette::gray;
    CHECK(encode_ppm(render_escape(f, cfg)) != base);
}

TEST_CASE("empty overlay list is the plain escape rendering")
{
    const auto cfg = small_config();
    const ExpMap f(0.0);
    CHECK(render_overlay(f, cfg, {}, true) == render_escape(f, cfg));
    CHECK(render_overlay(f, cfg, {}, false) == Image(cfg.width, cfg.height));
}

TEST_CASE("the line at pi is drawn on the rows around pi")
{
    RenderConfig cfg;
    cfg.width = 128;
    cfg.height = 128;
    const ExpMap f(0.0);
    const auto g1 = build_gamma(f, Sign::plus, 1, 0.01, cfg.window);
    const auto curves = overlay_from_curves(std::span(&g1, 1));
    OverlayReport report;
    const auto img = render_overlay(f, cfg, curves, false, &report);
    const double pixel_h = (cfg.window.y_max - cfg.window.y_min) / cfg.height;
    for (int y = 0; y < cfg.height; ++y) {
        const bool near = std::abs(pixel_center(cfg, 0, y).imag() - kPi) < pixel_h;
        for (int x = 0; x < cfg.width; ++x) {
            if (!near)
                CHECK(img.at(x, y) == Rgb{0, 0, 0});
        }
    }
    // Every column is hit on one of the two rows straddling pi.
    for (int x = 0; x < cfg.width; ++x) {
        int lit = 0;
        for (int y = 0; y < cfg.height; ++y)
            lit += img.at(x, y) == Rgb{0, 0, 0} ? 0 : 1;
        CHECK((lit >= 1 && lit <= 2));
    }
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].flatness == 0.0);
    CHECK(report.entries[0].level == doctest::Approx(kPi));
    CHECK(report.entries[0].turns == 0);
    CHECK(report.entries[0].near_lines == 1.0);
}

TEST_CASE("conjugate overlays render as mirror images")
{
    RenderConfig cfg;
    cfg.window = Window{-4, 4, -4, 4};
    cfg.width = 160;
    cfg.height = 120;
    const ExpMap f(0.0);
    std::vector<SampledCurve> curves;
    for (Sign s : {Sign::plus, Sign::minus})
        for (auto& c : build_continuum(f, s, 5, 0.01, cfg.window).curves)
            curves.push_back(std::move(c));
    const auto img = render_overlay(f, cfg, overlay_from_curves(curves), false);
    std::size_t lit = 0;
    for (int y = 0; y < cfg.height; ++y)
        for (int x = 0; x < cfg.width; ++x) {
            CHECK(img.at(x, y) == img.at(x, cfg.height - 1 - y));
            lit += img.at(x, y) == Rgb{0, 0, 0} ? 0 : 1;
        }
    CHECK(lit > 1000);
}

TEST_CASE("overlay rendering is deterministic")
{
    auto cfg = small_config();
    const ExpMap f(0.0);
    const auto approx = build_continuum(f, Sign::plus, 6, 0.02, cfg.window);
    const auto curves = overlay_from_curves(approx.curves);
    const auto a = encode_ppm(render_overlay(f, cfg, curves, true));
    cfg.threads = 1;
    cfg.tile = 5;
    CHECK(encode_ppm(render_overlay(f, cfg, curves, true)) == a);
}

TEST_CASE("forest and ray overlays")
{
    const auto cfg = small_config();
    const ExpMap f(0.0);
    const std::vector<ForestRow> rows{{0, {}, SpherePoint::finite(0.0, 1.0)},
                                      {1, {0}, SpherePoint::finite(100.0, 1.0)}};
    const auto forest = overlay_from_forest(rows);
    REQUIRE(forest.size() == 1);
    CHECK(forest[0].dots);
    OverlayReport report;
    const auto img = render_overlay(f, cfg, forest, false, &report);
    CHECK(report.entries[0].points_in_window == 1);
    CHECK(report.entries[0].pixels_drawn >= 1);
    CHECK(report.entries[0].pixels_drawn <= 4);
    CHECK_FALSE(img == Image(cfg.width, cfg.height));

    std::vector<RayPoint> ray(3);
    ray[0].z = SpherePoint::finite(0.5, 2.0);
    ray[1].z = SpherePoint::infinity();
    ray[2].z = SpherePoint::finite(1.5, 2.0);
    const auto broken = overlay_from_ray(ray, "r");
    OverlayReport rr;
    render_overlay(f, cfg, std::span(&broken, 1), false, &rr);
    // The break at infinity leaves two isolated points.
    CHECK(rr.entries[0].pixels_drawn <= 8);
}

TEST_CASE("image encodings")
{
    Image img(3, 2, {1, 2, 3});
    img.set(2, 1, {250, 0, 9});
    img.blend(0, 0, {255, 255, 255}, 0.5);
    CHECK(img.at(0, 0) == Rgb{128, 129, 129});
    img.blend(-1, 0, {0, 0, 0}, 1.0);
    const auto ppm = encode_ppm(img);
    CHECK(ppm.substr(0, 11) == "P6\n3 2\n255\n");
    CHECK(ppm.size() == 11 + 18);
    CHECK(decode_ppm(ppm) == img);
    CHECK_THROWS_AS(decode_ppm("P3\n1 1\n255\n"), std::invalid_argument);
    CHECK_THROWS_AS(decode_ppm("P6\n2 2\n255\nabc"), std::invalid_argument);
    const auto png = encode_image(img, ImageFormat::png);
    CHECK(png.substr(1, 3) == "PNG");
    CHECK(encode_image(img, ImageFormat::ppm) == ppm);
    CHECK_THROWS_AS(img.at(3, 0), std::out_of_range);
    CHECK_THROWS_AS(Image(0, 1), std::invalid_argument);
}

TEST_CASE("overlay files are recognised by their header")
{
    const ExpMap f(0.0);
    const auto g1 = build_gamma(f, Sign::minus, 1, 0.05, Window{-4, 4, -4, 1});
    const auto path = write_temp("expdyn_overlay_curve.csv", curves_to_csv(std::span(&g1, 1)));
    const auto loaded = load_overlay(path);
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].generation == 1);
    CHECK(loaded[0].sign == Sign::minus);
    CHECK(loaded[0].points.size() == g1.samples.size());

    const auto forest = write_temp("expdyn_overlay_forest.csv", "depth,branch_word,re,im\n0,,0,1\n1,2,0.5,13\n");
    CHECK(load_overlay(forest)[0].points.size() == 2);
    const auto ray = write_temp("expdyn_overlay_ray.csv", "t,re,im,depth,gap\n1,1,0,3,0\n");
    CHECK(load_overlay(ray)[0].points.size() == 1);

    const auto bad = write_temp("expdyn_overlay_bad.csv", "generation,sign,param,re,im\n1,+,0,0,1\n1,+,0,zz,1\n");
    CHECK_THROWS_WITH_AS(load_overlay(bad), doctest::Contains("line 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(load_overlay(bad), doctest::Contains("expdyn_overlay_bad.csv"), std::invalid_argument);
    const auto unknown = write_temp("expdyn_overlay_unknown.csv", "a,b\n");
    CHECK_THROWS_WITH_AS(load_overlay(unknown), doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS(load_overlay("/nonexistent/overlay.csv"));
    for (const auto& p : {path, forest, ray, bad, unknown})
        std::remove(p.c_str());
}
