#pragma once

#include "expdyn/continuum.hpp"

namespace expdyn::detail {

/// A curve gamma_k^sigma + shift to be sampled.
struct CurveSpec {
    const ExpMap* f = nullptr;
    Sign sigma = Sign::plus;
    int k = 0;
    Complex shift{0.0, 0.0};
};

struct RefineResult {
    std::vector<CurveSample> samples;
    std::size_t unresolved_gaps = 0;
    bool budget_exceeded = false;
};

/// Midpoint refinement over the curve parameter. Segments touching the
/// window are split until both the chordal and the euclidean gap are at most
/// delta; other segments until the chordal gap is at most `outside`. Where
/// the parameter runs out of precision the span is re-parametrized by a chord
/// at the pullback level where the chain passes close to a.
RefineResult sample_curve(const CurveSpec& spec, double delta, double outside,
                          const Window& window, std::size_t max_samples);

/// Drops leading and trailing samples while the next one inward is still
/// within delta of infinity; returns the resulting truncation distance.
double trim_tails(std::vector<CurveSample>& samples, double delta);

}  // namespace expdyn::detail
