#pragma once

#include "expdyn/dynamics.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace expdyn {

/// External address s_0 s_1 ... with a finite head and a zero or periodic tail.
struct Address {
    enum class Tail { zeros, periodic };

    std::vector<long> head;
    Tail tail = Tail::zeros;
    std::vector<long> period;

    /// Validates the tail; entries must satisfy |s| <= kMaxEntry.
    Address(std::vector<long> head, Tail tail, std::vector<long> period = {});
    static Address zeros() { return Address({}, Tail::zeros); }
    static Address periodic(std::vector<long> period) { return Address({}, Tail::periodic, std::move(period)); }

    static constexpr long kMaxEntry = 1'000'000;

    long at(std::size_t n) const noexcept;
    long bound() const noexcept;
    /// sigma^n(s).
    Address shifted(std::size_t n = 1) const;
    /// The address -s_0 -s_1 ..., whose ray is the mirror image.
    Address negated() const;

    /// Syntax `1,0,-2|periodic:1,0` or `0|zeros`; the head may be empty.
    static Address parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const Address&, const Address&) = default;
};

struct RayPoint {
    double t = 0.0;
    SpherePoint z;
    int depth = 0;
    double gap = 0.0;
};

struct RayTrace {
    Address address = Address::zeros();
    double ray_tol = 0.0;
    std::vector<RayPoint> points;

    std::vector<double> potentials() const;
    std::vector<SpherePoint> curve() const;
    double max_gap() const;
};

inline constexpr double kDefaultRayTol = 1e-10;

/// Potential transport E(t) = max(e^t + a, t + 1 + a); +inf once e^t overflows.
double transport(const ExpMap& f, double t) noexcept;

/// Raised when the depth-n and depth-(n-1) pullbacks of a point differ by
/// more than the tolerance.
class RayDepthInsufficient : public ComputationError {
public:
    RayDepthInsufficient(const std::string& what, RayPoint point)
        : ComputationError(what), point_(point)
    {
    }
    const RayPoint& point() const noexcept { return point_; }

private:
    RayPoint point_;
};

/// g_s(t) for each t of the grid by pullback of the seed t_n + 2 pi i s_n,
/// t_n = E^n(t), through the centered branches s_{n-1}, ..., s_0. With m the
/// last index having t_m below the overflow ledge, the depth is n = m + 2:
/// t_{m+1} is still a finite double and the first pullback from level m + 2
/// is taken in closed form. The gap is the chordal distance to the depth
/// n - 1 result.
RayTrace trace_ray(const ExpMap& f, const Address& s, std::span<const double> t_grid,
                   double ray_tol = kDefaultRayTol);

/// Single point of trace_ray.
RayPoint ray_point(const ExpMap& f, const Address& s, double t);

/// Number of leading itinerary entries that are reliable for a ray point at
/// potential t: those of iterates whose transported potential stays below
/// the overflow ledge.
int trusted_prefix(const ExpMap& f, double t);

struct RealPreimage {
    int n;
};
struct HairCandidate {
    /// Observed itinerary. Whether it has infinitely many nonzero entries is
    /// not decidable at a finite horizon.
    std::vector<long> prefix;
};
struct BoundedOrbit {
    int n_max;
};
using PathComponent = std::variant<RealPreimage, HairCandidate, BoundedOrbit>;

/// real_preimage(n) for the first n <= n_max with |im f^n(z)| <= 1e-9;
/// otherwise hair_candidate when the orbit shows escape, else bounded.
PathComponent classify_path_component(const ExpMap& f, Complex z, int n_max);
std::string path_component_to_json(const PathComponent& c);

// CSV t,re,im,depth,gap.
std::string ray_trace_to_csv(const RayTrace& trace);
std::vector<RayPoint> ray_points_from_csv(const std::string& text);

}  // namespace expdyn
