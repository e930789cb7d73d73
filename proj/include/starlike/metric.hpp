#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starlike/domain.hpp"

namespace starlike {

/// Lipschitz parametrized curve t ↦ γ(t) on [t_min, t_max].
struct HyperbolicCurve {
    std::function<cplx(double)> at;
    double lipschitz = 1.0;
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
    /// Constant real part and increasing imaginary part. In a domain starlike
    /// at infinity δ is non-decreasing along such a curve, which gives exact
    /// per-cell minima.
    bool upward_vertical = false;
    /// The curve is a straight segment traversed at constant speed, so a cell's
    /// chord equals its arclength; otherwise arclength is bounded by L·Δt.
    bool straight = false;

    /// z0 + τ(z1 − z0) on [0, 1].
    static HyperbolicCurve segment(cplx z0, cplx z1);
    /// β_p(t) = p + it on [0, ∞).
    static HyperbolicCurve vertical_ray(cplx p);
};

struct LengthOptions {
    double eps0 = 0.25;   // first-level cell size relative to δ/L
    double rtol = 1e-6;   // stop when successive levels agree to this
    int max_levels = 8;   // hard cap on the number of halvings
};

/// Classical density bounds for simply connected domains (|v|/(4δ), |v|/δ). Throws PointOutsideDomain.
std::pair<double, double> metric_bounds(const StarlikeDomain& domain, cplx z, cplx v);

/// Certified upper bound on the hyperbolic length of γ on [s, t]: a sum over
/// cells of (arclength bound)/m with m a lower bound of δ on the cell (exact minimum for
/// upward vertical curves, Lipschitz bound otherwise), refined by halving.
/// Throws CurveLeavesDomain.
double length_upper(const StarlikeDomain& domain, const HyperbolicCurve& curve, double s, double t,
                    const LengthOptions& options = {});

enum class LowerBoundSource { None, Witness, DistanceLemma, LevelCrossing };

const char* to_string(LowerBoundSource source);

struct LowerBound {
    double value = 0.0;
    LowerBoundSource source = LowerBoundSource::None;
    std::optional<cplx> witness;  // boundary point behind the log-ratio bound
    double witness_value = 0.0;
    double distance_lemma_value = 0.0;
    double level_crossing_value = 0.0;
};

struct LowerBoundOptions {
    int samples_per_arc = 4096;
    int refinement_levels = 40;  // geometric samples toward the nearest feet
    bool level_crossing = true;
    int crossing_heights = 64;
    int crossing_abscissae = 64;
};

/// Rigorous lower bound on k_Ω(z, w): the best of
///  * (1/4)|log(|z − ζ|/|w − ζ|)| over sampled boundary points ζ,
///  * (1/4)log(1 + |z − w|/min(δ(z), δ(w))),
///  * (1/4)∫ dy / M(y) between the heights of z and w, where M(y) bounds
///    sup δ on the horizontal line at height y (zero contribution when the
///    domain is horizontally unbounded).
/// Throws PointOutsideDomain.
LowerBound dist_lower(const StarlikeDomain& domain, cplx z, cplx w, const LowerBoundOptions& options = {});

struct DistanceBound {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::optional<cplx> lower_witness;
    LowerBoundSource lower_source = LowerBoundSource::None;
    std::vector<cplx> upper_path;  // polyline inside Ω
};

struct DistanceOptions {
    LowerBoundOptions lower{};
    LengthOptions search{0.25, 1e-2, 3};  // coarse evaluations during the height search
    LengthOptions final_length{};
    int golden_iterations = 24;
};

/// Lower bound from dist_lower; upper bound from the cheapest up-across-down
/// polyline (height chosen by golden-section search) or the straight segment.
/// Throws PointOutsideDomain or PathConstructionFailed.
DistanceBound dist_bound(const StarlikeDomain& domain, cplx z, cplx w, const DistanceOptions& options = {});

/// Upper bound on k_Ω along the polyline path through `path`.
double polyline_length_upper(const StarlikeDomain& domain, const std::vector<cplx>& path,
                             const LengthOptions& options = {});

enum class CertificateVerdict { Certified, RefutedUpToHorizon, Inconclusive };

const char* to_string(CertificateVerdict verdict);

struct SamplePair {
    double s;
    double t;
    double length_upper;
    double dist_lower;
};

struct QuasiGeodesicCertificate {
    double A = 1.0;
    double B = 0.0;
    std::vector<SamplePair> sample_pairs;
    double margin = 0.0;
    CertificateVerdict verdict = CertificateVerdict::Inconclusive;

    // Audit data.
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::vector<double> nodes;
    std::vector<double> segment_lengths;  // length_upper between consecutive nodes
    double A_coarse = 1.0;                // fit on every other node
    bool stable = false;
    std::vector<std::pair<double, double>> horizon_trace;  // (T, A fitted on [a, T])
    double A_max = 1e3;
    double stability_threshold = 0.05;
};

struct CertifyOptions {
    double A_max = 1e3;
    double stability_threshold = 0.05;
    LengthOptions length{};
    LowerBoundOptions lower{};
};

/// Fits (A, B) with length_upper ≤ A·dist_lower + B over all node pairs of a
/// geometric grid on [a, T] with n(n − 1)/2 ≤ pair_budget.
/// Throws CurveLeavesDomain.
QuasiGeodesicCertificate certify_quasi_geodesic(const StarlikeDomain& domain, const HyperbolicCurve& curve,
                                                double a, double T, int pair_budget = 300,
                                                const CertifyOptions& options = {});

/// Recomputes every pair of the certificate with the same operations and
/// returns min(A·dist_lower + B − length_upper).
double replay_certificate(const StarlikeDomain& domain, const HyperbolicCurve& curve,
                          const QuasiGeodesicCertificate& certificate, const CertifyOptions& options = {});

}  // namespace starlike
