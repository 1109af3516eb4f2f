#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace expdyn {

using Complex = std::complex<double>;

/// Real part threshold above which exp(z) is kept in logarithmic form.
inline constexpr double kOverflowLedge = 690.0;

/// Raised when a computation is asked for something it cannot deliver
/// (empty inputs, a branch evaluated on its cut, refinement budget exceeded).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of the Riemann sphere: a finite complex number or the point at
/// infinity. Components are never NaN and there is exactly one infinity.
class SpherePoint {
public:
    SpherePoint() = default;  // the origin

    /// Throws std::invalid_argument on NaN. A component that is +-inf yields
    /// the canonical infinity.
    static SpherePoint finite(double re, double im);
    static SpherePoint finite(Complex z) { return finite(z.real(), z.imag()); }
    static SpherePoint infinity() noexcept;

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    /// Finite value; throws std::logic_error for infinity.
    Complex value() const;
    double re() const { return value().real(); }
    double im() const { return value().imag(); }

    /// |z|, +inf for the point at infinity.
    double modulus() const noexcept;

    friend bool operator==(const SpherePoint& p, const SpherePoint& q) noexcept
    {
        if (p.infinite_ || q.infinite_)
            return p.infinite_ == q.infinite_;
        return p.re_ == q.re_ && p.im_ == q.im_;
    }

private:
    double re_ = 0.0;
    double im_ = 0.0;
    bool infinite_ = false;
};

SpherePoint conj(const SpherePoint& p);

/// A complex number too large for a double modulus, held as log|w| and arg w.
struct LogMagnitude {
    double log_abs = 0.0;
    double arg = 0.0;  // in (-pi, pi]

    friend bool operator==(const LogMagnitude&, const LogMagnitude&) = default;
};

/// Either an ordinary sphere point or a value past the overflow ledge.
using ExtendedValue = std::variant<SpherePoint, LogMagnitude>;

/// Reduces an angle to (-pi, pi].
double normalize_arg(double theta) noexcept;

/// exp(z), switching to LogMagnitude once re(z) exceeds kOverflowLedge.
ExtendedValue safe_exp(Complex z);

/// Chordal distance on the unit sphere: 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)).
/// Evaluated without intermediate overflow for any pair of doubles.
double chordal_dist(const SpherePoint& p, const SpherePoint& q) noexcept;

/// Inverse stereographic projection onto the unit sphere in R^3. The
/// Euclidean distance between images equals chordal_dist.
std::array<double, 3> to_unit_sphere(const SpherePoint& p) noexcept;

/// Finite list of sphere points, optionally tagged with the sampling
/// resolution it was produced at.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<SpherePoint> points,
                      std::optional<double> resolution = std::nullopt)
        : points_(std::move(points)), resolution_(resolution)
    {
    }

    std::span<const SpherePoint> points() const noexcept { return points_; }
    const SpherePoint& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::optional<double> resolution() const noexcept { return resolution_; }
    bool contains_infinity() const noexcept;

    void push_back(const SpherePoint& p) { points_.push_back(p); }
    void append(const PointSet& other);
    void set_resolution(std::optional<double> r) { resolution_ = r; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<SpherePoint> points_;
    std::optional<double> resolution_;
};

/// sup_{a in A} inf_{b in B} chordal(a, b). Throws ComputationError on
/// empty input.
double directed_hausdorff(const PointSet& from, const PointSet& to);

/// Symmetric discrete Hausdorff distance in the chordal metric.
double hausdorff_discrete(const PointSet& a, const PointSet& b);

/// Discrete Hausdorff value with the sampling resolutions of both inputs, so
/// the distance between the sampled continua lies in [lower(), upper()].
struct HausdorffEstimate {
    double discrete = 0.0;
    std::optional<double> resolution_a;
    std::optional<double> resolution_b;

    double slack() const noexcept
    {
        return resolution_a.value_or(0.0) + resolution_b.value_or(0.0);
    }
    double lower() const noexcept { return std::max(0.0, discrete - slack()); }
    double upper() const noexcept { return discrete + slack(); }
};

HausdorffEstimate hausdorff_estimate(const PointSet& a, const PointSet& b);

enum class Metric { euclidean, chordal };

/// Partition of a point list into classes; labels are numbered in order of
/// first appearance.
struct Partition {
    std::vector<std::size_t> labels;
    std::size_t count = 0;

    std::vector<std::size_t> class_sizes() const;
    std::size_t largest() const;
    std::vector<std::vector<std::size_t>> classes() const;
};

/// Classes of the epsilon-chain relation: two points share a class iff they
/// are joined by a chain of steps each of length <= eps.
Partition eps_components(const PointSet& points, double eps, Metric metric = Metric::euclidean);

/// Union-find over indices [0, n) with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t i);
    bool unite(std::size_t a, std::size_t b);
    std::size_t size() const noexcept { return parent_.size(); }

    /// Canonical labelling: classes numbered by first appearance.
    Partition partition();

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// CSV (`re,im`, literal `inf`) and JSON (array of {re, im} or "inf").
std::string point_set_to_csv(const PointSet& points);
PointSet point_set_from_csv(const std::string& text);
std::string point_set_to_json(const PointSet& points);
PointSet point_set_from_json(const std::string& text);

}  // namespace expdyn
