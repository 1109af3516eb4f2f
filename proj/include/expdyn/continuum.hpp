#pragma once

#include "expdyn/dynamics.hpp"
#include "expdyn/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace expdyn {

/// Axis-aligned rectangle in the plane.
struct Window {
    double x_min = -4.0;
    double x_max = 4.0;
    double y_min = -1.0;
    double y_max = 4.0;

    /// Throws std::invalid_argument unless the rectangle is bounded and
    /// nondegenerate.
    void validate() const;
    bool contains(Complex z) const noexcept
    {
        return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
    }
    bool contains(const SpherePoint& p) const noexcept { return p.is_finite() && contains(p.value()); }
    Window translated(double dy) const noexcept { return {x_min, x_max, y_min + dy, y_max + dy}; }
    Window conjugate() const noexcept { return {x_min, x_max, -y_max, -y_min}; }

    /// Parses "x0,x1,y0,y1".
    static Window parse(std::string_view spec);
    std::string to_string() const;

    friend bool operator==(const Window&, const Window&) = default;
};

// ---------------------------------------------------------------------------
// Curve parameter.
//
// Every gamma_k is parametrized by the real coordinate u of gamma_1 = u + i
// sigma pi (equivalently gamma_0 = a - e^u). Deep curves visit the window only
// at astronomically large |u|, so samples carry the super-logarithm
// p = sign(u) S(|u|) instead, where S(v) = v on [0, 1] and S(e^v) = S(v) + 1.
// S is continuous and increasing; double precision in p resolves every
// generation the window can see.
// ---------------------------------------------------------------------------

/// u as exp^height(base) with sign; height > 0 only when u itself overflows.
struct TowerReal {
    int sign = 1;
    int height = 0;
    double base = 0.0;
};

TowerReal tower_from_param(double p);
/// Inverse of tower_from_param for representable u.
double param_from_u(double u);

/// gamma_k^sigma at parameter p. Iterates whose modulus exceeds the double
/// range are carried symbolically; a point beyond it reports infinity.
SpherePoint gamma_point(const ExpMap& f, Sign sigma, int k, double p);

struct CurveSample {
    double param = 0.0;
    SpherePoint point;

    friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

/// Ordered polyline approximation of gamma_k^sigma. Inside the window
/// consecutive samples are at most `resolution` apart (chordal), except at
/// `unresolved_gaps` places where the parameter ran out of precision.
struct SampledCurve {
    int generation = 0;
    Sign sign = Sign::plus;
    double resolution = 0.0;
    /// Chordal distance from the farther endpoint to infinity.
    double truncation = 0.0;
    std::size_t unresolved_gaps = 0;
    std::vector<CurveSample> samples;

    PointSet points() const;
    PointSet points_in(const Window& window) const;
    /// Largest chordal gap between consecutive samples with both ends in window.
    double max_gap_in(const Window& window) const;
};

struct GammaOptions {
    /// Chordal gap allowed for segments away from the window; 0 means use
    /// the in-window resolution everywhere.
    double outside_resolution = 0.0;
    std::size_t max_samples = 10'000'000;
};

/// Builds gamma_k by midpoint refinement in p until in-window gaps are below
/// delta. Throws ComputationError (with the partial curve) when the sample
/// budget is exhausted.
SampledCurve build_gamma(const ExpMap& f, Sign sigma, int k, double delta, const Window& window,
                         const GammaOptions& options = {});

class RefinementBudgetExceeded : public ComputationError {
public:
    RefinementBudgetExceeded(const std::string& what, SampledCurve partial)
        : ComputationError(what), partial_(std::move(partial))
    {
    }
    const SampledCurve& partial() const noexcept { return partial_; }

private:
    SampledCurve partial_;
};

/// gamma_0 ... gamma_K at a shared resolution and window: the working
/// stand-in for the closure X^sigma.
struct ContinuumApprox {
    Sign sign = Sign::plus;
    Window window;
    double delta = 0.0;
    std::vector<SampledCurve> curves;

    /// Union of all samples inside the window (resolution delta).
    PointSet union_in_window() const;
    /// Same, restricted to the listed generations.
    PointSet union_in_window(std::span<const int> generations) const;
};

ContinuumApprox build_continuum(const ExpMap& f, Sign sigma, int K, double delta,
                                const Window& window, const GammaOptions& options = {});

struct HausdorffEntry {
    int generation = 0;
    double distance = 0.0;
    /// Sampling resolution of both inputs: the continuous distance lies
    /// within distance +- 2 * resolution.
    double resolution = 0.0;
};

/// d_k = Hausdorff(gamma_k u {inf}, gamma_0 u ... u gamma_K u {inf}) in the
/// chordal metric, computed on the in-window samples.
std::vector<HausdorffEntry> hausdorff_report(const ContinuumApprox& approx);

/// Samples of Gamma^+ u Gamma^- translated by 2 pi i j, |j| <= m_translates,
/// that fall inside the window.
PointSet build_Y(const ExpMap& f, int K, double delta, const Window& window, int m_translates,
                 const GammaOptions& options = {});

/// Iterated strip preimages of a base set. Node i sits at depth[i]; for
/// depth >= 1 it equals inv_strip(branch[i], point of parent[i]).
struct PreimageForest {
    int depth = 0;
    long k_max = 0;
    Window window;
    PointSet points;
    std::vector<int> depth_of;
    std::vector<std::int64_t> parent;
    std::vector<long> branch;
    /// Points of the base set that were not expanded because they lie on the
    /// slit [a, inf).
    std::size_t dropped_on_slit = 0;
    /// Preimages discarded because they fell outside the window.
    std::size_t outside_window = 0;
    /// Indices of the force-included gluing points (2k+1) pi i.
    std::vector<std::size_t> gluing;

    /// Branch word k_0 ... k_{d-1} with point = L_{k_0}(L_{k_1}(... (root))).
    std::vector<long> word(std::size_t i) const;
    std::size_t root(std::size_t i) const;
    PointSet points_up_to(int depth) const;
};

/// Expands Y0 by inv_strip for |k| <= k_max, j times, keeping preimages that
/// land in the window. The points a - 1 and (2k+1) pi i (glued by
/// L_k(a - 1) = (2k+1) pi i) are force-included.
PreimageForest build_preimage_forest(const ExpMap& f, const PointSet& Y0, int j, long k_max,
                                     const Window& window);

struct ConnectivityLevel {
    double eps = 0.0;
    std::size_t points = 0;
    std::size_t components = 0;
    double largest_share = 0.0;
};

struct ConnectivityReport {
    std::vector<ConnectivityLevel> levels;
    std::optional<double> resolution;
    /// Smallest tested eps / resolution from which every larger tested eps
    /// gives a single component; empty when that never happens or the
    /// resolution is unknown.
    std::optional<double> connected_from_ratio;
};

/// Euclidean eps-components that meet the window, for each eps of a strictly
/// decreasing list. Points outside the window count only as chain links, so
/// sampling a margin around the window removes splits caused by clipping.
ConnectivityReport connectivity_probe(const PointSet& points, std::span<const double> eps_list,
                                      const Window& window);

struct DensityReport {
    std::size_t grid_n = 0;
    /// coverage[d] is the fraction of grid cells hit by preimages of depth <= d.
    std::vector<double> coverage;
    std::size_t points = 0;

    double fraction() const { return coverage.empty() ? 0.0 : coverage.back(); }
};

/// Pulls the seed (default -1, or a - 1 if -1 is not left of a) back through
/// every branch word of length <= j with |k| <= k_max and measures the
/// fraction of window cells that contain a preimage.
DensityReport density_probe(const ExpMap& f, int j, const Window& window, int grid_n,
                            long k_max = 8, std::optional<Complex> seed = std::nullopt);

// File formats.
std::string curves_to_csv(std::span<const SampledCurve> curves);  // generation,sign,param,re,im
std::vector<SampledCurve> curves_from_csv(const std::string& text);
std::string forest_to_csv(const PreimageForest& forest);  // depth,branch_word,re,im

struct ForestRow {
    int depth = 0;
    std::vector<long> word;
    SpherePoint point;
};
std::vector<ForestRow> forest_from_csv(const std::string& text);

std::string hausdorff_report_to_json(std::span<const HausdorffEntry> report, double delta);
std::string connectivity_report_to_json(const ConnectivityReport& report);
std::string density_report_to_json(const DensityReport& report);

}  // namespace expdyn
