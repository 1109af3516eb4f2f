#include "expdyn/dynamics.hpp"
#include "expdyn/simd/kernels.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace expdyn;
namespace simd = expdyn::simd;

namespace {

/// Runs body under each available instruction set and restores the default.
template <class Body>
std::vector<decltype(std::declval<Body>()())> under_each_isa(Body body)
{
    std::vector<decltype(body())> out;
    const auto saved = simd::active_isa();
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2}) {
        if (!simd::isa_available(isa))
            continue;
        simd::set_active_isa(isa);
        out.push_back(body());
    }
    simd::set_active_isa(saved);
    return out;
}

}  // namespace

TEST_CASE("scalar kernels are always available")
{
    CHECK(simd::isa_available(simd::Isa::scalar));
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
    CHECK(simd::isa_available(simd::detected_isa()));
}

TEST_CASE("kernel exponential and sincos are accurate")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> x(-700.0, 700.0);
    std::uniform_real_distribution<double> y(-1000.0, 1000.0);
    for (int i = 0; i < 5000; ++i) {
        const double v = x(rng);
        const double ref = static_cast<double>(exp(oracle::Real(v)));
        CHECK(std::abs(simd::kernel_exp(v) - ref) <= 4e-16 * ref);
        const double t = y(rng);
        double s = 0.0;
        double c = 0.0;
        simd::kernel_sincos(t, s, c);
        CHECK(std::abs(s - static_cast<double>(sin(oracle::Real(t)))) <= 1e-15);
        CHECK(std::abs(c - static_cast<double>(cos(oracle::Real(t)))) <= 1e-15);
    }
}

TEST_CASE("instruction sets give bit-identical results")
{
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> re(-6.0, 6.0);
    std::uniform_real_distribution<double> im(-8.0, 8.0);
    // Odd length exercises the vector tails.
    const std::size_t n = 4099;
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    std::vector<double> zs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = re(rng);
        ys[i] = im(rng);
        zs[i] = re(rng);
    }

    const auto steps = under_each_isa([&] {
        std::vector<std::int32_t> out(n);
        simd::escape_steps(xs, ys, {0.0, 50.0, 64}, out);
        return out;
    });
    for (const auto& s : steps)
        CHECK(s == steps.front());

    const auto exps = under_each_isa([&] {
        std::vector<double> out(n);
        simd::exp_batch(xs, out);
        return out;
    });
    for (const auto& e : exps)
        CHECK(e == exps.front());

    const auto trig = under_each_isa([&] {
        std::vector<double> s(n);
        std::vector<double> c(n);
        simd::sincos_batch(ys, s, c);
        s.insert(s.end(), c.begin(), c.end());
        return s;
    });
    for (const auto& t : trig)
        CHECK(t == trig.front());

    const auto dists = under_each_isa([&] {
        std::vector<double> d2(n);
        std::vector<double> d3(n);
        simd::sq_dist_2d(xs, ys, 0.3, -0.2, d2);
        simd::sq_dist_3d(xs, ys, zs, 0.3, -0.2, 1.0, d3);
        d2.insert(d2.end(), d3.begin(), d3.end());
        d2.push_back(simd::min_sq_dist_2d(xs, ys, 0.3, -0.2));
        d2.push_back(simd::min_sq_dist_3d(xs, ys, zs, 0.3, -0.2, 1.0));
        return d2;
    });
    for (const auto& d : dists)
        CHECK(d == dists.front());
}

TEST_CASE("escape kernel agrees with the library orbit on clear cases")
{
    const ExpMap f(0.0);
    std::vector<double> xs;
    std::vector<double> ys;
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        xs.push_back(x);
        ys.push_back(0.0);
    }
    std::vector<std::int32_t> steps(xs.size());
    simd::escape_steps(xs, ys, {0.0, 50.0, 64}, steps);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(steps[i] == orbit(f, {xs[i], 0.0}, 64).step());

    std::vector<std::int32_t> one(1);
    simd::escape_steps(std::vector<double>{0.0}, std::vector<double>{0.0}, {0.0, 50.0, 10}, one);
    CHECK(one[0] == 4);
    simd::escape_steps(std::vector<double>{0.0}, std::vector<double>{0.0}, {0.0, 50.0, 3}, one);
    CHECK(one[0] == simd::kBounded);
}
