#pragma once

#include "expdyn/numerics.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace expdyn {

/// Which closed half-plane / strip pair an inverse branch works on.
enum class Sign { plus, minus };

inline double sign_factor(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
char sign_char(Sign s) noexcept;
Sign parse_sign(std::string_view s);

/// Boundary distance below which an itinerary stops recording.
inline constexpr double kBoundaryTolerance = 1e-9;

/// f(z) = exp(z) + a with its numerical escape threshold.
class ExpMap {
public:
    struct Options {
        double r_escape = 50.0;
        int n_max_default = 64;
        /// Permits a <= -1. Real-axis escape guarantees no longer hold.
        bool allow_any_a = false;
    };

    explicit ExpMap(double a);
    ExpMap(double a, const Options& options);

    double a() const noexcept { return a_; }
    double r_escape() const noexcept { return r_escape_; }
    int n_max_default() const noexcept { return n_max_default_; }
    /// True when a > -1, the regime in which every real orbit escapes.
    bool standard() const noexcept { return a_ > -1.0; }

private:
    double a_;
    double r_escape_;
    int n_max_default_;
};

/// f(z). The addition of a is skipped once the result is in log form, where
/// it changes the value by a relative amount below |a| e^-690.
ExtendedValue apply(const ExpMap& f, Complex z);

struct Escaped {
    int n;
};
struct Bounded {
    int n_max;
    SpherePoint last;
};
struct Overflowed {
    int n;
    LogMagnitude value;
};

/// Outcome of a bounded-horizon orbit. orbit_prefix[0] is the input and
/// orbit_prefix[n] = f^n(z) for every finite iterate computed.
struct EscapeResult {
    Complex input;
    std::variant<Escaped, Bounded, Overflowed> tag;
    std::vector<SpherePoint> orbit_prefix;

    bool escaped() const noexcept { return std::holds_alternative<Escaped>(tag); }
    bool bounded() const noexcept { return std::holds_alternative<Bounded>(tag); }
    bool overflowed() const noexcept { return std::holds_alternative<Overflowed>(tag); }
    /// Step index of the escape or overflow witness; -1 when bounded.
    int step() const noexcept;
    std::string tag_name() const;
};

/// Iterates f up to n_max times. Reports the first n >= 0 with
/// re f^n(z) > r_escape. Only on the real axis is this a proof of escape;
/// elsewhere it flags an escape candidate.
EscapeResult orbit(const ExpMap& f, Complex z, int n_max);
inline EscapeResult orbit(const ExpMap& f, Complex z) { return orbit(f, z, f.n_max_default()); }

/// Branch L_sigma of f^-1 from the closed half-plane onto the closed strip
/// between 0 and sigma*pi. Throws ComputationError for w = a or w in the
/// wrong half-plane.
Complex inv_halfplane(const ExpMap& f, Sign sigma, Complex w);

/// Branch L_k of f^-1 on C minus the slit [a, inf), with imaginary part in
/// the open interval (2 pi k, 2 pi (k+1)). Throws ComputationError on the slit.
Complex inv_strip(const ExpMap& f, long k, Complex w);

/// Branch of f^-1 with imaginary part in ((2s-1) pi, (2s+1) pi], the strip
/// convention of itineraries. Throws ComputationError for w = a.
Complex inv_centered(const ExpMap& f, long s, Complex w);

/// Index s with im z in ((2s-1) pi, (2s+1) pi) (rounding to nearest).
long strip_index(double im) noexcept;

/// Distance from im to the nearest odd multiple of pi.
double boundary_distance(double im) noexcept;

enum class Termination { cap_reached, overflow, boundary_hit };

struct Itinerary {
    Complex input;
    std::vector<long> entries;
    Termination terminated_by = Termination::cap_reached;
    /// Step of the boundary hit or overflow; equals entries.size().
    int terminated_at = 0;

    std::string termination_name() const;
};

/// Records s_n = round(im f^n(z) / 2 pi) for n < n_max while the orbit is
/// finite and stays at least kBoundaryTolerance away from the strip edges.
Itinerary itinerary(const ExpMap& f, Complex z, int n_max);

// JSON records {input, tag, steps, entries, terminated_by}.
std::string escape_result_to_json(const EscapeResult& r);
EscapeResult escape_result_from_json(const std::string& text);
std::string itinerary_to_json(const Itinerary& it);
Itinerary itinerary_from_json(const std::string& text);

}  // namespace expdyn
