#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "starlike/polynomial.hpp"

namespace starlike {

using cplx = std::complex<double>;

enum class PieceKind { Polynomial, Constant, MinusInfinity, PlusInfinity };

const char* to_string(PieceKind kind);

/// One piece of the lower boundary profile Φ on the interval [lo, hi].
/// Endpoints may be infinite; junction values are resolved upper
/// semicontinuously (max of the two one-sided limits).
struct ProfilePiece {
    double lo = 0.0;
    double hi = 0.0;
    PieceKind kind = PieceKind::MinusInfinity;
    std::vector<double> coeffs;  // Polynomial only, ascending powers
    double level = 0.0;          // Constant only

    static ProfilePiece polynomial(double lo, double hi, std::vector<double> coeffs);
    static ProfilePiece constant(double lo, double hi, double level);
    static ProfilePiece minus_infinity(double lo, double hi);
    static ProfilePiece plus_infinity(double lo, double hi);

    bool operator==(const ProfilePiece&) const = default;
};

/// Ordered pieces partitioning the real line; Ω = {x + iy : y > Φ(x)}.
struct BoundaryProfile {
    std::vector<ProfilePiece> pieces;

    bool operator==(const BoundaryProfile&) const = default;
};

/// Graph arc y = P(x) for x in [x_lo, x_hi] (endpoints may be infinite).
struct GraphArc {
    double x_lo;
    double x_hi;
    Polynomial poly;
    Polynomial dpoly;  // derivative of poly
};

/// Vertical segment {x} x [y_lo, y_hi]; y_lo may be -inf, y_hi may be +inf.
struct VerticalArc {
    double x;
    double y_lo;
    double y_hi;
};

using BoundaryArc = std::variant<GraphArc, VerticalArc>;

struct ValidationReport {
    std::vector<std::string> checks;
    std::vector<std::string> warnings;
    std::size_t graph_arcs = 0;
    std::size_t vertical_arcs = 0;
    double finite_lo = 0.0;  // finite component of the profile
    double finite_hi = 0.0;
};

/// Immutable domain starlike at infinity together with its derived boundary.
class StarlikeDomain {
public:
    const BoundaryProfile& profile() const noexcept { return profile_; }
    const std::vector<BoundaryArc>& arcs() const noexcept { return arcs_; }
    const ValidationReport& report() const noexcept { return report_; }
    const std::optional<cplx>& anchor() const noexcept { return anchor_; }
    bool anchored() const noexcept { return anchor_.has_value(); }

    /// Effective profile value Φ(x), upper semicontinuous at junctions.
    double value(double x) const noexcept;

    /// The open interval where Φ < +∞.
    std::pair<double, double> finite_component() const noexcept {
        return {report_.finite_lo, report_.finite_hi};
    }

private:
    friend StarlikeDomain build_domain(const BoundaryProfile& profile);
    friend StarlikeDomain with_anchor(StarlikeDomain domain, std::optional<cplx> anchor);

    BoundaryProfile profile_;
    std::vector<Polynomial> piece_polys_;  // compiled polynomial/constant pieces
    std::vector<BoundaryArc> arcs_;
    ValidationReport report_;
    std::optional<cplx> anchor_;
};

/// Validates the profile and derives the boundary arcs. Throws MalformedProfile.
StarlikeDomain build_domain(const BoundaryProfile& profile);

/// Returns a copy carrying the given anchor (no validation).
StarlikeDomain with_anchor(StarlikeDomain domain, std::optional<cplx> anchor);

bool contains(const StarlikeDomain& domain, cplx z) noexcept;

enum class Side { Both, Plus, Minus };

/// Nearest boundary point, optionally restricted to Re ≥ split (Plus) or
/// Re ≤ split (Minus). `found` is false when the restricted boundary is empty.
/// Ties are broken by smallest |Re| and then smallest Im.
struct BoundaryFoot {
    bool found = false;
    double distance = 0.0;
    cplx foot{};
};

BoundaryFoot nearest_boundary_point(const StarlikeDomain& domain, cplx z, Side side = Side::Both,
                                    double split = 0.0);

/// Euclidean distance from z ∈ Ω to ℂ∖Ω. Throws PointOutsideDomain.
double boundary_distance(const StarlikeDomain& domain, cplx z);

/// Gauges at height t above the base point p.
struct AxisGaugeSample {
    double t = 0.0;
    double delta_tilde_plus = 0.0;
    double delta_tilde_minus = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double omega = 0.0;
    double clearance = 0.0;
    std::optional<cplx> foot_plus;   // realizes delta_tilde_plus
    std::optional<cplx> foot_minus;  // realizes delta_tilde_minus
};

/// Throws PointOutsideDomain when p + it ∉ Ω and InvalidArgument when t ≤ 0.
AxisGaugeSample half_gauges(const StarlikeDomain& domain, cplx p, double t);

/// Ω + c.
StarlikeDomain translate(const StarlikeDomain& domain, cplx c);

/// Mirror image under x ↦ −x (swaps the roles of the two half gauges).
StarlikeDomain reflect(const StarlikeDomain& domain);

/// Ω − p anchored at 0; p must be a boundary foot Re p + iΦ(Re p) with Φ finite.
/// Throws InvalidAnchor.
StarlikeDomain normalize_anchor(const StarlikeDomain& domain, cplx p);

}  // namespace starlike
