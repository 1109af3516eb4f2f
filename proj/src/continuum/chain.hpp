#pragma once

// Pullback chains under L_+ with an extended number format. Deep curves pass
// within e^-1000 of a and out to exp^5(1) and beyond; plain doubles lose both
// the tiny imaginary parts that decide on which side of a a point passes and
// the huge real parts of the tails. Everything here lives in the closed upper
// half-plane; the lower family is obtained by conjugation.

#include "expdyn/numerics.hpp"

#include <vector>

namespace expdyn::detail {

/// Imaginary parts below this are carried as logarithms.
inline constexpr double kTinyIm = 1e-200;

struct ChainPoint {
    /// > 0: the real part is rsign * exp^height(re) with re > 709.
    int height = 0;
    int rsign = 1;
    double re = 0.0;
    /// When set the imaginary part is exp(im) (possibly exp(-inf) = +0).
    bool tiny = false;
    double im = 0.0;

    bool representable() const noexcept { return height == 0; }
    /// Nearest double value; tiny imaginary parts may round to zero.
    Complex value() const noexcept;
};

ChainPoint plain_point(Complex z) noexcept;

/// L_+(w). Returns false when w is exactly a.
bool pull(const ChainPoint& w, double a, ChainPoint& out);

enum class ChainEnd { finite, infinite, hit_a };

/// levels[i] lies on gamma_{first + i}.
struct Chain {
    int first = 0;
    std::vector<ChainPoint> levels;
    ChainEnd end = ChainEnd::finite;
};

/// Pulls start (on gamma_level) back until generation k.
Chain chain_from(int level, const ChainPoint& start, double a, int k);

/// Chain of gamma_1 at tower parameter p, pulled back to generation k.
Chain tower_chain(double a, int k, double p);

/// For w = a + e^ell (sinh(tau) + i): the hairpin coordinate tau of dx = re w - a.
double hairpin_tau(double dx, double ell) noexcept;

/// L_+(a + e^ell (sinh(tau) + i)), the tip region of a fold.
ChainPoint hairpin_image(double ell, double tau) noexcept;

}  // namespace expdyn::detail
