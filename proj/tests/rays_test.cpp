#include "expdyn/rays.hpp"

#include "oracle.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace expdyn;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Address> random_addresses(std::uint64_t seed, int count, long bound)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> entry(-bound, bound);
    std::uniform_int_distribution<int> len(0, 4);
    std::vector<Address> out;
    for (int i = 0; i < count; ++i) {
        std::vector<long> head(static_cast<std::size_t>(len(rng)));
        for (auto& e : head)
            e = entry(rng);
        if (i % 3 == 0) {
            out.emplace_back(head, Address::Tail::zeros);
            continue;
        }
        std::vector<long> period(static_cast<std::size_t>(len(rng) + 1));
        for (auto& e : period)
            e = entry(rng);
        out.emplace_back(head, Address::Tail::periodic, period);
    }
    return out;
}

std::vector<double> grid(double lo, double hi, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

/// The same pullback carried out in 50-digit arithmetic.
Complex oracle_ray_point(double a, const Address& s, double t)
{
    using oracle::Cplx;
    using oracle::Real;
    const Real ra(a);
    std::vector<Real> levels{Real(t)};
    while (levels.back() <= 690) {
        const Real x = levels.back();
        levels.push_back(std::max(exp(x) + ra, x + 1 + ra));
    }
    const std::size_t top = levels.size() - 1;
    const Real T = levels[top];
    const Real pi = boost::math::constants::pi<Real>();
    // log(e^T + 2 pi i s_{top+1} - a) with the e^T factored out.
    const Cplx small = Cplx(-ra, 2 * pi * s.at(top + 1)) * exp(-T);
    Cplx z = Cplx(T, 2 * pi * s.at(top)) + log(Cplx(1) + small);
    for (std::size_t j = top; j-- > 0;) {
        z = log(z - Cplx(ra));
        z += Cplx(Real(0), 2 * pi * s.at(j));
    }
    return oracle::drop(z);
}

}  // namespace

TEST_CASE("address syntax")
{
    const auto a = Address::parse("1,0,-2|periodic:1,0");
    CHECK(a.head == std::vector<long>{1, 0, -2});
    CHECK(a.tail == Address::Tail::periodic);
    CHECK(a.at(0) == 1);
    CHECK(a.at(2) == -2);
    CHECK(a.at(3) == 1);
    CHECK(a.at(4) == 0);
    CHECK(a.at(1001) == 1);
    CHECK(a.at(1002) == 0);
    CHECK(a.bound() == 2);
    CHECK(Address::parse(a.to_string()) == a);

    const auto z = Address::parse("0|zeros");
    CHECK(z.at(5) == 0);
    CHECK(Address::parse("|zeros") == Address::zeros());
    CHECK(Address::parse("|periodic:3") == Address::periodic({3}));

    CHECK(a.shifted(2).at(0) == -2);
    CHECK(a.shifted(4) == Address::parse("|periodic:0,1"));
    CHECK(a.negated() == Address::parse("-1,0,2|periodic:-1,0"));

    CHECK_THROWS_AS(Address::parse("1,2"), std::invalid_argument);
    CHECK_THROWS_AS(Address::parse("1|periodic:"), std::invalid_argument);
    CHECK_THROWS_AS(Address::parse("1|sometimes"), std::invalid_argument);
    CHECK_THROWS_AS(Address::parse("x|zeros"), std::invalid_argument);
    CHECK_THROWS_AS(Address({}, Address::Tail::periodic), std::invalid_argument);
    CHECK_THROWS_AS(Address({2'000'000}, Address::Tail::zeros), std::invalid_argument);
}

TEST_CASE("potential transport")
{
    const ExpMap f(0.0);
    CHECK(transport(f, 1.0) == doctest::Approx(std::exp(1.0)));
    CHECK(transport(ExpMap(-0.9), 0.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::isinf(transport(f, 800.0)));
    CHECK(trusted_prefix(f, 1000.0) == 0);
    CHECK(trusted_prefix(f, 1.0) >= 3);
}

TEST_CASE("the zero ray at a = 0 is the positive real axis")
{
    const ExpMap f(0.0);
    const auto trace = trace_ray(f, Address::zeros(), grid(0.05, 10.0, 60));
    for (const auto& p : trace.points) {
        CHECK(std::abs(p.z.im()) <= 1e-9);
        CHECK(p.z.re() == doctest::Approx(p.t).epsilon(1e-13));
    }
}

TEST_CASE("ray points match a high-precision pullback")
{
    for (double a : {-0.5, 0.0, 1.0}) {
        const ExpMap f(a);
        for (const auto& s : random_addresses(51, 10, 3))
            for (double t : grid(0.1, 4.0, 9)) {
                const auto p = ray_point(f, s, t);
                CHECK(chordal_dist(p.z, SpherePoint::finite(oracle_ray_point(a, s, t))) <= 1e-12);
            }
    }
}

TEST_CASE("rays satisfy the functional equation")
{
    const ExpMap f(0.0);
    const auto ts = grid(0.1, 4.0, 40);
    for (const auto& s : random_addresses(52, 20, 3)) {
        const auto trace = trace_ray(f, s, ts);
        CHECK(trace.max_gap() <= kDefaultRayTol);
        std::vector<double> next;
        for (double t : ts)
            next.push_back(transport(f, t));
        const auto shifted = trace_ray(f, s.shifted(), next);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto image = expdyn::apply(f, trace.points[i].z.value());
            const auto* w = std::get_if<SpherePoint>(&image);
            REQUIRE(w);
            CHECK(chordal_dist(*w, shifted.points[i].z) <= 1e-8);
        }
    }
}

TEST_CASE("negated addresses give conjugate rays")
{
    const ExpMap f(0.0);
    const auto ts = grid(0.05, 6.0, 30);
    for (const auto& s : random_addresses(53, 20, 3)) {
        const auto trace = trace_ray(f, s, ts);
        const auto mirror = trace_ray(f, s.negated(), ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(chordal_dist(mirror.points[i].z, conj(trace.points[i].z)) <= 1e-10);
    }
}

TEST_CASE("itineraries of ray points follow the address")
{
    const ExpMap f(0.0);
    for (const auto& s : random_addresses(54, 20, 3))
        for (double t : grid(0.1, 4.0, 12)) {
            const auto p = ray_point(f, s, t);
            const int n = trusted_prefix(f, t);
            const auto it = itinerary(f, p.z.value(), n);
            REQUIRE(it.entries.size() == static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                CHECK(it.entries[static_cast<std::size_t>(j)] == s.at(static_cast<std::size_t>(j)));
        }
}

TEST_CASE("rays escape monotonically far out")
{
    const ExpMap f(0.0);
    const auto ts = grid(5.0, 40.0, 50);
    for (const auto& s : random_addresses(55, 20, 3)) {
        const auto trace = trace_ray(f, s, ts);
        for (std::size_t i = 1; i < ts.size(); ++i)
            CHECK(trace.points[i].z.re() > trace.points[i - 1].z.re());
        // Far out the ray sits on the line im = 2 pi s_0.
        CHECK(trace.points.back().z.im() == doctest::Approx(kTwoPi * s.at(0)).epsilon(1e-9));
    }
}

TEST_CASE("ray grid validation")
{
    const ExpMap f(0.0);
    const std::vector<double> bad_order{1.0, 0.5};
    const std::vector<double> nonpositive{0.0, 1.0};
    CHECK_THROWS_AS(trace_ray(f, Address::zeros(), bad_order), std::invalid_argument);
    CHECK_THROWS_AS(trace_ray(f, Address::zeros(), nonpositive), std::invalid_argument);
    CHECK_THROWS_AS(trace_ray(f, Address::zeros(), grid(1, 2, 3), 0.0), std::invalid_argument);
    CHECK(trace_ray(f, Address::zeros(), std::vector<double>{}).points.empty());
}

TEST_CASE("path component classification")
{
    const ExpMap f(0.0);
    const auto real = classify_path_component(f, {1.0, 0.0}, 10);
    REQUIRE(std::holds_alternative<RealPreimage>(real));
    CHECK(std::get<RealPreimage>(real).n == 0);
    const auto line = classify_path_component(f, {0.0, std::numbers::pi}, 10);
    REQUIRE(std::holds_alternative<RealPreimage>(line));
    CHECK(std::get<RealPreimage>(line).n == 1);

    const auto s = Address::periodic({1, 0});
    const auto p = ray_point(f, s, 2.0);
    const auto hair = classify_path_component(f, p.z.value(), 30);
    REQUIRE(std::holds_alternative<HairCandidate>(hair));
    const auto& prefix = std::get<HairCandidate>(hair).prefix;
    REQUIRE(prefix.size() >= 3);
    CHECK(prefix[0] == 1);
    CHECK(prefix[1] == 0);
    CHECK(prefix[2] == 1);

    // For a = -2 the real line has an attracting fixed point near -1.84;
    // nearby off-axis points stay bounded.
    ExpMap::Options opts;
    opts.allow_any_a = true;
    const ExpMap g(-2.0, opts);
    const auto bounded = classify_path_component(g, {-1.8, 0.01}, 40);
    CHECK(std::holds_alternative<BoundedOrbit>(bounded));

    const auto j = nlohmann::json::parse(path_component_to_json(hair));
    CHECK(j["kind"] == "hair_candidate");
    CHECK(j["decidable"] == false);
    CHECK(nlohmann::json::parse(path_component_to_json(real))["n"] == 0);
}

TEST_CASE("ray traces round trip through CSV")
{
    const ExpMap f(0.0);
    const auto trace = trace_ray(f, Address::parse("2,-1|periodic:1"), grid(0.1, 3.0, 17));
    const auto back = ray_points_from_csv(ray_trace_to_csv(trace));
    REQUIRE(back.size() == trace.points.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].t == trace.points[i].t);
        CHECK(back[i].z == trace.points[i].z);
        CHECK(back[i].depth == trace.points[i].depth);
        CHECK(back[i].gap == trace.points[i].gap);
    }
    CHECK_THROWS_WITH_AS(ray_points_from_csv("t,re,im,depth,gap\n1,2,3,4\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
}
