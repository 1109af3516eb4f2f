#include "expdyn/continuum.hpp"
#include "expdyn/rays.hpp"
#include "expdyn/render.hpp"
#include "expdyn/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace expdyn;

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct Options {
    double a = 0.0;
    bool any_a = false;
    std::string sign = "+";
    int k = 1;
    int K = 12;
    double delta = 0.01;
    std::string window;
    int depth = 2;
    long kmax = 2;
    std::string eps;
    std::string address = "0|zeros";
    std::string out;
    std::string format;
    std::string z = "0";
    int n = 64;
    int translates = 2;
    int grid = 128;
    std::string in;
    std::string seed;
    double t_min = 0.1;
    double t_max = 4.0;
    int t_count = 40;
    double ray_tol = kDefaultRayTol;
    bool classify = false;
    int width = 512;
    int height = 512;
    std::string palette = "classic";
    std::vector<std::string> overlays;
    bool no_background = false;
    int tile = 64;
    int threads = 0;
    std::string report;
    std::optional<int> overlay_K;
};

ExpMap make_map(const Options& o)
{
    ExpMap::Options opts;
    opts.allow_any_a = o.any_a;
    return ExpMap(o.a, opts);
}

Window window_or(const Options& o, Window fallback)
{
    if (o.window.empty())
        return fallback;
    return Window::parse(o.window);
}

Complex parse_complex(const std::string& s)
{
    const auto fields = text::split(s, ',');
    if (fields.size() == 1)
        return {text::parse_double(fields[0]), 0.0};
    if (fields.size() == 2)
        return {text::parse_double(fields[0]), text::parse_double(fields[1])};
    throw std::invalid_argument("complex value must be 're' or 're,im', got '" + s + "'");
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    for (auto f : text::split(s, ','))
        out.push_back(text::parse_double(f));
    return out;
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

void emit(const Options& o, const std::string& data)
{
    if (o.out.empty() || o.out == "-") {
        std::cout << data;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    file << data;
    if (!file)
        throw std::runtime_error("cannot write " + o.out);
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (format == a)
            return;
    throw std::invalid_argument("unsupported --format '" + format + "'");
}

PointSet load_points(const std::string& path)
{
    const std::string content = read_file(path);
    const auto rows = text::lines(content);
    const auto header = rows.empty() ? std::string_view{} : text::trim(rows[0]);
    try {
        if (header == "generation,sign,param,re,im") {
            PointSet out;
            for (const auto& c : curves_from_csv(content))
                out.append(c.points());
            return out;
        }
        if (header == "depth,branch_word,re,im") {
            PointSet out;
            for (const auto& r : forest_from_csv(content))
                out.push_back(r.point);
            return out;
        }
        return point_set_from_csv(content);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string overlay_report_to_json(const OverlayReport& report)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"label", e.label},
                           {"generation", e.generation},
                           {"sign", std::string(1, sign_char(e.sign))},
                           {"points_in_window", e.points_in_window},
                           {"pixels_drawn", e.pixels_drawn},
                           {"flatness", e.flatness},
                           {"level", e.level},
                           {"turns", e.turns},
                           {"near_lines", e.near_lines}});
    return nlohmann::json{{"curves", entries}}.dump(2) + "\n";
}

void run_orbit(const Options& o)
{
    emit(o, escape_result_to_json(orbit(make_map(o), parse_complex(o.z), o.n)) + "\n");
}

void run_itinerary(const Options& o)
{
    const auto f = make_map(o);
    const auto z = parse_complex(o.z);
    if (o.classify)
        emit(o, path_component_to_json(classify_path_component(f, z, o.n)) + "\n");
    else
        emit(o, itinerary_to_json(itinerary(f, z, o.n)) + "\n");
}

void run_curve(const Options& o)
{
    const auto f = make_map(o);
    const auto curve = build_gamma(f, parse_sign(o.sign), o.k, o.delta, window_or(o, Window{}));
    emit(o, curves_to_csv(std::span(&curve, 1)));
}

void run_continuum(const Options& o)
{
    const auto approx =
        build_continuum(make_map(o), parse_sign(o.sign), o.K, o.delta, window_or(o, Window{}));
    emit(o, curves_to_csv(approx.curves));
}

void run_hausdorff(const Options& o)
{
    const auto approx =
        build_continuum(make_map(o), parse_sign(o.sign), o.K, o.delta, window_or(o, Window{}));
    emit(o, hausdorff_report_to_json(hausdorff_report(approx), o.delta) + "\n");
}

void run_build_y(const Options& o)
{
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json"});
    const auto y = build_Y(make_map(o), o.K, o.delta, window_or(o, Window{}), o.translates);
    emit(o, format == "csv" ? point_set_to_csv(y) : point_set_to_json(y) + "\n");
}

void run_forest(const Options& o)
{
    const auto f = make_map(o);
    const auto window = window_or(o, Window{});
    const PointSet base =
        o.in.empty() ? build_Y(f, o.K, o.delta, window, o.translates) : load_points(o.in);
    emit(o, forest_to_csv(build_preimage_forest(f, base, o.depth, o.kmax, window)));
}

void run_connect(const Options& o)
{
    const auto window = window_or(o, Window{});
    PointSet points;
    if (o.in.empty()) {
        const auto approx = build_continuum(make_map(o), parse_sign(o.sign), o.K, o.delta, window);
        for (const auto& c : approx.curves)
            points.append(c.points());
        points.set_resolution(o.delta);
    } else {
        points = load_points(o.in);
    }
    const auto eps = o.eps.empty() ? std::vector<double>{5.0 * o.delta} : parse_list(o.eps);
    emit(o, connectivity_report_to_json(connectivity_probe(points, eps, window)) + "\n");
}

void run_density(const Options& o)
{
    const auto f = make_map(o);
    const auto window = window_or(o, Window{-4.0, 4.0, -4.0, 4.0});
    const auto seed = o.seed.empty() ? std::nullopt : std::optional<Complex>(parse_complex(o.seed));
    emit(o, density_report_to_json(density_probe(f, o.depth, window, o.grid, o.kmax, seed)) + "\n");
}

void run_ray(const Options& o)
{
    if (!(o.t_max > o.t_min) || o.t_count < 2)
        throw std::invalid_argument("ray grid needs t_max > t_min and at least 2 points");
    std::vector<double> grid;
    for (int i = 0; i < o.t_count; ++i)
        grid.push_back(o.t_min + (o.t_max - o.t_min) * i / (o.t_count - 1));
    const auto trace = trace_ray(make_map(o), Address::parse(o.address), grid, o.ray_tol);
    emit(o, ray_trace_to_csv(trace));
}

void run_render(const Options& o)
{
    const auto f = make_map(o);
    RenderConfig cfg;
    cfg.window = window_or(o, cfg.window);
    cfg.width = o.width;
    cfg.height = o.height;
    cfg.n_max = o.n;
    cfg.r_escape = f.r_escape();
    cfg.palette = parse_palette(o.palette);
    cfg.format = parse_image_format(o.format.empty() ? "ppm" : o.format);
    cfg.tile = o.tile;
    cfg.threads = o.threads;
    cfg.validate();

    std::vector<OverlayCurve> curves;
    for (const auto& path : o.overlays) {
        auto loaded = load_overlay(path);
        curves.insert(curves.end(), loaded.begin(), loaded.end());
    }
    if (o.overlay_K) {
        std::vector<Sign> signs;
        if (o.sign == "both")
            signs = {Sign::plus, Sign::minus};
        else
            signs = {parse_sign(o.sign)};
        for (Sign s : signs) {
            const auto approx = build_continuum(f, s, *o.overlay_K, o.delta, cfg.window);
            auto more = overlay_from_curves(approx.curves);
            curves.insert(curves.end(), more.begin(), more.end());
        }
    }

    OverlayReport report;
    const Image image = curves.empty() && !o.no_background
                            ? render_escape(f, cfg)
                            : render_overlay(f, cfg, curves, !o.no_background, &report);
    emit(o, encode_image(image, cfg.format));
    if (!o.report.empty()) {
        std::ofstream file(o.report, std::ios::binary);
        file << overlay_report_to_json(report);
        if (!file)
            throw std::runtime_error("cannot write " + o.report);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical experiments for the exponential family exp(z) + a"};
    app.require_subcommand(1);
    Options o;

    auto map_opts = [&](CLI::App* c) {
        c->add_option("--a", o.a, "parameter a (must exceed -1 unless overridden)");
        c->add_flag("--seed-override-a", o.any_a, "allow a <= -1");
        c->add_option("--out", o.out, "output file (default stdout)");
    };
    auto curve_opts = [&](CLI::App* c) {
        c->add_option("--sign", o.sign, "half-plane sign: + or - (or plus, minus)");
        c->add_option("--delta", o.delta, "sampling resolution (chordal)");
        c->add_option("--window", o.window, "window x0,x1,y0,y1");
    };

    auto* c_orbit = app.add_subcommand("orbit", "escape test of one orbit (JSON)");
    map_opts(c_orbit);
    c_orbit->add_option("--z", o.z, "start point re or re,im");
    c_orbit->add_option("--n", o.n, "iteration cap");

    auto* c_itin = app.add_subcommand("itinerary", "strip itinerary of one orbit (JSON)");
    map_opts(c_itin);
    c_itin->add_option("--z", o.z, "start point re or re,im");
    c_itin->add_option("--n", o.n, "iteration cap");
    c_itin->add_flag("--classify", o.classify, "report the path component kind instead");

    auto* c_curve = app.add_subcommand("curve", "sample one curve gamma_k (CSV)");
    map_opts(c_curve);
    curve_opts(c_curve);
    c_curve->add_option("--k", o.k, "generation");

    auto* c_cont = app.add_subcommand("continuum", "sample gamma_0 ... gamma_K (CSV)");
    map_opts(c_cont);
    curve_opts(c_cont);
    c_cont->add_option("--K", o.K, "last generation");

    auto* c_haus = app.add_subcommand("hausdorff", "Hausdorff distances d_k (JSON)");
    map_opts(c_haus);
    curve_opts(c_haus);
    c_haus->add_option("--K", o.K, "last generation");

    auto* c_y = app.add_subcommand("buildY", "samples of Y with translates (CSV or JSON)");
    map_opts(c_y);
    curve_opts(c_y);
    c_y->add_option("--K", o.K, "last generation");
    c_y->add_option("--translates", o.translates, "translates by 2 pi i j, |j| <= m");
    c_y->add_option("--format", o.format, "csv or json");

    auto* c_forest = app.add_subcommand("forest", "iterated strip preimages of Y (CSV)");
    map_opts(c_forest);
    curve_opts(c_forest);
    c_forest->add_option("--K", o.K, "last generation of Y");
    c_forest->add_option("--translates", o.translates, "translates of Y");
    c_forest->add_option("--depth", o.depth, "preimage depth");
    c_forest->add_option("--kmax", o.kmax, "largest strip index |k|");
    c_forest->add_option("--in", o.in, "base points (CSV) instead of Y");

    auto* c_conn = app.add_subcommand("connect", "eps-component counts (JSON)");
    map_opts(c_conn);
    curve_opts(c_conn);
    c_conn->add_option("--K", o.K, "last generation when no input is given");
    c_conn->add_option("--eps", o.eps, "decreasing eps list, default 5 delta");
    c_conn->add_option("--in", o.in, "points, curve or forest CSV");

    auto* c_dens = app.add_subcommand("density", "coverage of preimages of a seed (JSON)");
    map_opts(c_dens);
    c_dens->add_option("--window", o.window, "window x0,x1,y0,y1");
    c_dens->add_option("--depth", o.depth, "preimage depth");
    c_dens->add_option("--kmax", o.kmax, "largest strip index |k|");
    c_dens->add_option("--grid", o.grid, "cells per side");
    c_dens->add_option("--seed", o.seed, "seed re or re,im (default -1)");

    auto* c_ray = app.add_subcommand("ray", "dynamic ray for an address (CSV)");
    map_opts(c_ray);
    c_ray->add_option("--address", o.address, "e.g. '1,0,-2|periodic:1,0' or '0|zeros'");
    c_ray->add_option("--tmin", o.t_min, "smallest potential");
    c_ray->add_option("--tmax", o.t_max, "largest potential");
    c_ray->add_option("--count", o.t_count, "grid points");
    c_ray->add_option("--ray-tol", o.ray_tol, "largest accepted convergence gap");

    auto* c_render = app.add_subcommand("render", "escape image with overlays (PPM or PNG)");
    map_opts(c_render);
    curve_opts(c_render);
    c_render->add_option("--K", o.overlay_K, "overlay gamma_0 ... gamma_K of --sign (+, - or both)");
    c_render->add_option("--n", o.n, "iteration cap");
    c_render->add_option("--width", o.width, "pixels");
    c_render->add_option("--height", o.height, "pixels");
    c_render->add_option("--palette", o.palette, "classic or gray");
    c_render->add_option("--format", o.format, "ppm or png");
    c_render->add_option("--overlay", o.overlays, "curve, forest or ray CSV files");
    c_render->add_flag("--no-background", o.no_background, "draw overlays on black");
    c_render->add_option("--tile", o.tile, "tile side in pixels");
    c_render->add_option("--threads", o.threads, "worker threads, 0 = auto");
    c_render->add_option("--report", o.report, "overlay metadata (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_orbit)
            run_orbit(o);
        else if (*c_itin)
            run_itinerary(o);
        else if (*c_curve)
            run_curve(o);
        else if (*c_cont)
            run_continuum(o);
        else if (*c_haus)
            run_hausdorff(o);
        else if (*c_y)
            run_build_y(o);
        else if (*c_forest)
            run_forest(o);
        else if (*c_conn)
            run_connect(o);
        else if (*c_dens)
            run_density(o);
        else if (*c_ray)
            run_ray(o);
        else if (*c_render)
            run_render(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return 0;
}
