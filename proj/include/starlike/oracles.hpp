#pragma once

#include <vector>

#include "starlike/domain.hpp"

namespace starlike {

enum class ModelKind { VerticalStrip, RightHalfPlane, UnitDisc };

/// Point of the unit disc carried together with log(1 − z), which stays
/// accurate when z is exponentially close to the Denjoy-Wolff point 1.
struct DiscPoint {
    cplx z;
    cplx log_one_minus;

    /// Builds the pair from z alone (fine away from 1).
    static DiscPoint from(cplx z);
};

/// Closed-form reference model: Ω = h(𝔻) with an explicit Koenigs map h, so
/// that φ_t(z) = h⁻¹(h(z) + it) and hyperbolic distances are exact.
class ExactModel {
public:
    /// {|Re w| < width/2} with h(z) = (width/π)·i·log((1 + z)/(1 − z)).
    static ExactModel strip(double width = 3.14159265358979323846);
    /// {Re w > 0} with h(z) = (1 + z)/(1 − z).
    static ExactModel half_plane();
    /// The disc itself (h = identity); carries no semigroup.
    static ExactModel disc();

    ModelKind kind() const noexcept { return kind_; }
    double width() const noexcept { return width_; }
    /// Denjoy-Wolff point of the model semigroup.
    cplx tau() const noexcept { return {1.0, 0.0}; }

    bool in_model(cplx w) const noexcept;

    cplx h(cplx z) const;
    cplx h(const DiscPoint& z) const;
    DiscPoint h_inv(cplx w) const;

    /// φ_t(z); throws InvalidArgument for the disc model.
    DiscPoint flow(cplx z, double t) const;
    DiscPoint flow(const DiscPoint& z, double t) const;

    /// The model domain as a profile-based domain (strip and half-plane only).
    StarlikeDomain domain() const;

private:
    ExactModel(ModelKind kind, double width) : kind_(kind), width_(width) {}

    ModelKind kind_;
    double width_;
};

/// Exact hyperbolic distance between two points of the model domain,
/// normalized so that the density of 𝔻 at 0 is 1. Throws PointOutsideDomain.
double exact_distance(const ExactModel& model, cplx z, cplx w);

/// Disc distance computed from the complements 1 − z and 1 − w.
double disc_distance(const DiscPoint& z, const DiscPoint& w);

/// Right half-plane distance (1/2)·arccosh(1 + |z − w|²/(2 Re z Re w)).
double half_plane_distance(cplx z, cplx w);

/// Distance in the strip {|Re w| < width/2}, stable for far-apart points.
double strip_distance(double width, cplx z, cplx w);

struct SlopeSample {
    double t;
    cplx phi;         // φ_t(z)
    double argument;  // Arg(1 − τ̄ φ_t(z))
};

/// Trace of Arg(1 − τ̄φ_t(z)) along the orbit of z ∈ 𝔻.
std::vector<SlopeSample> orbit_slope_trace(const ExactModel& model, cplx z, const std::vector<double>& grid);

}  // namespace starlike
