#include "expdyn/rays.hpp"

#include "expdyn/parallel.hpp"
#include "expdyn/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace expdyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRealTolerance = 1e-9;
// Transport steps before giving up; only a close to -1 gets near it.
constexpr std::size_t kMaxTransportSteps = 100'000;

/// t_0 = t, ..., t_{m+1}: every potential up to the first one past the ledge.
std::vector<double> potential_levels(const ExpMap& f, double t)
{
    std::vector<double> levels{t};
    while (levels.back() <= kOverflowLedge) {
        if (levels.size() > kMaxTransportSteps)
            throw ComputationError("potential transport does not escape");
        levels.push_back(transport(f, levels.back()));
    }
    return levels;
}

Complex pull_to_zero(const ExpMap& f, const Address& s, std::size_t level, Complex z)
{
    for (std::size_t j = level; j-- > 0;)
        z = inv_centered(f, s.at(j), z);
    return z;
}

}  // namespace

double transport(const ExpMap& f, double t) noexcept
{
    const double e = std::exp(t);
    if (!std::isfinite(e))
        return e;
    return std::max(e + f.a(), t + 1.0 + f.a());
}

int trusted_prefix(const ExpMap& f, double t)
{
    return static_cast<int>(potential_levels(f, t).size()) - 1;
}

RayPoint ray_point(const ExpMap& f, const Address& s, double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("ray potential must be positive and finite");
    const auto levels = potential_levels(f, t);
    const std::size_t top = levels.size() - 1;
    const double T = levels[top];
    const double s_top = kTwoPi * static_cast<double>(s.at(top));

    // Level top+1 holds e^T + a + 2 pi i s_{top+1}; its pullback is
    // T + log(1 + i y) with y = 2 pi s_{top+1} e^-T.
    const double y = kTwoPi * static_cast<double>(s.at(top + 1)) * std::exp(-T);
    const Complex deep{T + 0.5 * std::log1p(y * y), std::atan(y) + s_top};
    const Complex shallow{T, s_top};

    RayPoint p;
    p.t = t;
    p.depth = static_cast<int>(top) + 1;
    p.z = SpherePoint::finite(pull_to_zero(f, s, top, deep));
    p.gap = chordal_dist(p.z, SpherePoint::finite(pull_to_zero(f, s, top, shallow)));
    return p;
}

RayTrace trace_ray(const ExpMap& f, const Address& s, std::span<const double> t_grid,
                   double ray_tol)
{
    if (!(ray_tol > 0.0))
        throw std::invalid_argument("ray tolerance must be positive");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]))
            throw std::invalid_argument("potential grid must be positive and finite");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("potential grid must be increasing");
    }

    RayTrace trace;
    trace.address = s;
    trace.ray_tol = ray_tol;
    trace.points.resize(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) { trace.points[i] = ray_point(f, s, t_grid[i]); });

    for (const auto& p : trace.points)
        if (p.gap > ray_tol)
            throw RayDepthInsufficient("ray depth insufficient at t=" + text::format_double(p.t) +
                                           ": gap " + text::format_double(p.gap) + " at depth " +
                                           std::to_string(p.depth),
                                       p);
    return trace;
}

std::vector<double> RayTrace::potentials() const
{
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.t);
    return out;
}

std::vector<SpherePoint> RayTrace::curve() const
{
    std::vector<SpherePoint> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.z);
    return out;
}

double RayTrace::max_gap() const
{
    double g = 0.0;
    for (const auto& p : points)
        g = std::max(g, p.gap);
    return g;
}

PathComponent classify_path_component(const ExpMap& f, Complex z, int n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("n_max must be nonnegative");
    bool escaping = false;
    Complex w = z;
    for (int n = 0; n <= n_max; ++n) {
        // The real line escapes only for a > -1.
        if (f.standard() && std::abs(w.imag()) <= kRealTolerance)
            return RealPreimage{n};
        if (w.real() > f.r_escape())
            escaping = true;
        if (n == n_max)
            break;
        const auto next = apply(f, w);
        const auto* finite = std::get_if<SpherePoint>(&next);
        if (!finite || finite->is_infinite()) {
            escaping = true;
            break;
        }
        w = finite->value();
    }
    if (!escaping)
        return BoundedOrbit{n_max};
    return HairCandidate{itinerary(f, z, n_max).entries};
}

std::string path_component_to_json(const PathComponent& c)
{
    nlohmann::json j;
    if (const auto* r = std::get_if<RealPreimage>(&c)) {
        j["kind"] = "real_preimage";
        j["n"] = r->n;
    } else if (const auto* h = std::get_if<HairCandidate>(&c)) {
        j["kind"] = "hair_candidate";
        j["prefix"] = h->prefix;
        j["decidable"] = false;
    } else {
        j["kind"] = "bounded_orbit";
        j["n_max"] = std::get<BoundedOrbit>(c).n_max;
    }
    return j.dump();
}

std::string ray_trace_to_csv(const RayTrace& trace)
{
    std::ostringstream out;
    out << "t,re,im,depth,gap\n";
    for (const auto& p : trace.points)
        out << text::format_double(p.t) << ',' << text::format_double(p.z.re()) << ','
            << text::format_double(p.z.im()) << ',' << p.depth << ',' << text::format_double(p.gap)
            << '\n';
    return out.str();
}

std::vector<RayPoint> ray_points_from_csv(const std::string& content)
{
    const auto rows = text::lines(content);
    if (rows.empty() || text::trim(rows[0]) != "t,re,im,depth,gap")
        text::fail_at_line(1, "expected header t,re,im,depth,gap");
    std::vector<RayPoint> points;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto row = text::trim(rows[i]);
        if (row.empty())
            continue;
        const auto fields = text::split(row, ',');
        if (fields.size() != 5)
            text::fail_at_line(i + 1, "expected 5 fields");
        try {
            RayPoint p;
            p.t = text::parse_double(fields[0]);
            p.z = SpherePoint::finite(text::parse_double(fields[1]), text::parse_double(fields[2]));
            p.depth = static_cast<int>(text::parse_int(fields[3]));
            p.gap = text::parse_double(fields[4]);
            points.push_back(p);
        } catch (const std::invalid_argument& e) {
            text::fail_at_line(i + 1, e.what());
        }
    }
    return points;
}

}  // namespace expdyn
