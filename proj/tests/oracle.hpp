#pragma once

// Test-side reference computations, independent of the library code paths.

#include "expdyn/numerics.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using Cplx = boost::multiprecision::cpp_complex_50;

inline Cplx lift(expdyn::Complex z) { return Cplx(Real(z.real()), Real(z.imag())); }
inline expdyn::Complex drop(const Cplx& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline double chordal(expdyn::Complex p, expdyn::Complex q)
{
    const Cplx a = lift(p);
    const Cplx b = lift(q);
    const Real num = 2 * abs(a - b);
    const Real den = sqrt((1 + norm(a)) * (1 + norm(b)));
    return static_cast<double>(num / den);
}

/// Relative distance |x - y| / max(|y|, tiny) in high precision.
inline double rel_err(expdyn::Complex x, const Cplx& y)
{
    const Real d = abs(lift(x) - y);
    const Real m = abs(y);
    return static_cast<double>(m > 0 ? d / m : d);
}

/// gamma_k^+ at real parameter u: k-fold principal log pullback of a - e^u.
inline Cplx gamma_plus(double a, int k, const Real& u)
{
    if (k == 0)
        return Cplx(Real(a) - exp(u), Real(0));
    // The first logarithm lands on the cut: log(-e^u) = u + i pi from above.
    Cplx w(u, boost::math::constants::pi<Real>());
    for (int j = 1; j < k; ++j)
        w = log(w - Cplx(Real(a), Real(0)));
    return w;
}

/// Quadratic union-find eps-components; returns the class count and labels
/// numbered by first appearance.
inline std::vector<std::size_t> brute_components(const std::vector<expdyn::Complex>& pts, double eps,
                                                 std::size_t& count)
{
    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i];
        return i;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) <= eps)
                parent[find(i)] = find(j);
    std::vector<std::size_t> label(pts.size());
    std::vector<std::size_t> root_label(pts.size(), SIZE_MAX);
    count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto r = find(i);
        if (root_label[r] == SIZE_MAX)
            root_label[r] = count++;
        label[i] = root_label[r];
    }
    return label;
}

}  // namespace oracle
