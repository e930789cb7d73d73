#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starlike/domain.hpp"

namespace starlike {

/// Ω₁ = {Im ζ > (Re ζ)²}, anchored at 0.
StarlikeDomain omega1();

/// Ω₂ = {Re ζ > 0} ∪ Ω₁, anchored at 0.
StarlikeDomain omega2();

/// {Re ζ > 0}; not anchorable (its profile is never finite).
StarlikeDomain right_half_plane();

/// {lo < Re ζ < hi}; not anchorable.
StarlikeDomain vertical_strip(double lo, double hi);

/// Bookkeeping of the nested-strip construction: Ω₂ with the vertical strips
/// (a_k, b_k) removed from the complement, at heights t_k and s_k.
struct Omega3Construction {
    std::vector<double> t_seq;
    std::vector<double> s_seq;
    std::vector<double> a_seq;
    std::vector<double> b_seq;
    std::vector<cplx> eta_seq;   // b_k + i b_k², the foot realizing δ⁻(s_k)
    std::vector<cplx> zeta_seq;  // parabola foot realizing δ⁻(t_k)
    double t1 = 5.0;
    double margin = 1e-3;

    /// Smaller root of the defining quadratic for s_k; reported for audit since
    /// both roots can exceed t_k (the larger one is the valid choice).
    std::vector<double> s_alternate;
};

/// Builds the domain of depth n ≥ 1 (t₁ > 4). Throws InvalidArgument for bad
/// inputs and ConstructionOverflow when magnitudes exceed 1e300 or the walls
/// can no longer be separated in double precision.
std::pair<StarlikeDomain, Omega3Construction> omega3(int depth, double t1 = 5.0, double margin = 1e-3);

/// Looks up a gallery domain by name: omega1, omega2, omega3, strip (|Re| < π/2),
/// unit-strip (|Re| < 1), half-plane.
StarlikeDomain gallery_domain(const std::string& name, int depth = 4);

/// Names accepted by gallery_domain.
std::vector<std::string> gallery_names();

}  // namespace starlike
