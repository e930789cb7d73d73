#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starlike/domain.hpp"
#include "starlike/metric.hpp"

namespace starlike {

/// σ(t) = (δ⁺(t) − δ⁻(t))/2 + it for an anchored domain, t ≥ 1.
class SigmaCurve {
public:
    /// Throws NotAnchored.
    explicit SigmaCurve(StarlikeDomain domain);

    const StarlikeDomain& domain() const noexcept { return domain_; }

    /// Gauges at height t above the anchor (anchor is 0 after normalization).
    AxisGaugeSample gauges(double t) const;
    cplx operator()(double t) const;
    static cplx point(const AxisGaugeSample& g) { return {0.5 * (g.delta_plus - g.delta_minus), g.t}; }

    /// σ as a curve on [t_min, ∞). Re σ is 1-Lipschitz and Im σ has unit
    /// speed, so L = √2. For a profile symmetric about Re p the curve is the
    /// vertical ray through p, flagged as such.
    HyperbolicCurve as_curve(double t_min = 1.0) const;

private:
    StarlikeDomain domain_;
};

SigmaCurve build_sigma(const StarlikeDomain& domain);

struct ClearanceCheck {
    double t = 0.0;
    double clearance = 0.0;  // δ_Ω(σ(t)), 0 when σ(t) ∉ Ω
    double bound = 0.0;      // ω(t)/(2√2)
    bool pass = false;       // clearance ≥ bound − 1e−9
};

/// Throws InvalidArgument for t < 1.
ClearanceCheck clearance_check(const SigmaCurve& sigma, double t);

/// Finite-horizon test of whether ω(t) ≥ αt eventually.
struct EasyCaseResult {
    bool holds = false;
    double alpha = 0.0;       // min ω/t over the tail when holds
    double T0 = 0.0;          // first grid t with ω(t) < t when it fails
    double tail_slope = 0.0;  // least-squares slope of log(ω/t) against log t
    double horizon = 0.0;
    std::vector<std::pair<double, double>> trace;  // (t, ω(t)/t)
};

/// Samples ω/t on a geometric grid in [1, T]; the tail is t ≥ √T. Fails when
/// the tail ratio decays and some ω(t) < t. Heuristic by nature.
EasyCaseResult easy_case_test(const StarlikeDomain& domain, double horizon, cplx p = {0.0, 0.0},
                              double ratio = 1.05);

enum class AssumptionBranch { EasyCase, MarkerCase };

const char* to_string(AssumptionBranch branch);

/// Heights t_n and complement points z_n± of the marker construction.
/// Index 0 holds the start t₀ = a and its feet.
struct MarkerSequence {
    double a = 0.0;
    std::vector<double> t;
    std::vector<double> y;
    std::vector<cplx> z_plus;
    std::vector<cplx> z_minus;
    std::vector<cplx> a_pts;  // foot realizing δ⁻(t_n), Re ≤ 0
    std::vector<cplx> b_pts;  // foot realizing δ⁺(t_n), Re ≥ 0
    std::vector<double> delta_n;  // Re z_n⁺ − Re z_n⁻
    std::vector<double> omega_n;
    std::vector<double> delta_plus_n;
    std::vector<double> delta_minus_n;
    std::vector<cplx> sigma_n;
    AssumptionBranch assumption_branch = AssumptionBranch::MarkerCase;
    double horizon = 0.0;
    bool reached_horizon = false;

    std::size_t size() const noexcept { return t.size(); }
};

/// Builds markers with t_n the end of the first stretch where
/// ω(s) ≥ (1/6)·min|σ(s) − z_{n−1}±| holds; stops at the horizon.
/// a defaults to T₀ + 1 from easy_case_test.
/// Throws BranchMismatch (easy case holds), InvalidStart (ω(a) ≥ a) or
/// MarkerStallDetected (no t₁ below the horizon, or no progress).
MarkerSequence build_markers(const StarlikeDomain& domain, std::optional<double> a = std::nullopt,
                             double horizon = 1e6);

struct InvariantViolation {
    std::size_t n = 0;
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct MarkerReport {
    std::vector<std::string> checks;  // names of the checks that ran
    std::size_t evaluations = 0;      // number of inequalities tested
    std::vector<InvariantViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks properties (1)–(5), the separation 3ω(t_n) ≤ y_n − t_{n−1} ≤
/// min(t_n − t_{n−1}, y_n − y_{n−1}), interleaving, the ratio ≥ 3 and
/// δ_n ≤ ω(t_n) from the stored data.
MarkerReport marker_invariants(const MarkerSequence& markers);

/// The stored-data checks plus ω(t) ≤ ω(t_n) ≤ 2ω(t) on a grid in [y_n, t_n]
/// and the three ∫dt/ω estimates between consecutive markers.
MarkerReport marker_invariants(const StarlikeDomain& domain, const MarkerSequence& markers);

/// Lower bound on k_Ω(σ(a), σ(b)) from the markers; needs
/// a = t₀ ≤ b < t_N + 3ω(t_N) for the last stored marker N.
double marker_distance_lower(const MarkerSequence& markers, double b);

struct EtaCheck {
    double t = 0.0;
    bool pass = false;           // δ(η_t(r)) ≥ δ(it) on the grid
    double min_ratio = 1.0;      // min δ(η_t(r))/δ(it)
    double length_upper = 0.0;   // ℓ_upper(η_t)
    double bound = 0.0;          // |δ⁺ − δ⁻|/(2δ(it))
};

/// η_t(r) = it + r(δ⁺ − δ⁻)/2, r ∈ [0, 1], checked on 64 points.
EtaCheck eta_segment_check(const StarlikeDomain& domain, double t);

struct SigmaDistance {
    DistanceBound bound;            // lower is heuristic (see lower_heuristic)
    double eta_bound = 0.0;         // |δ⁺ − δ⁻|/(2δ(it))
    double ratio_log = 0.0;         // log(eta_bound), −∞ when eta_bound = 0
    double s_star = 0.0;            // sampled minimizer
    bool lower_heuristic = true;
    std::vector<std::pair<double, double>> samples;  // (s, upper bound of k(it, σ(s)))
};

struct SigmaDistanceOptions {
    double window_factor = 10.0;  // s ∈ [t/f, f·t] ∩ [1, ∞)
    int samples = 17;
    DistanceOptions distance{};
};

/// Upper bound on k_Ω(it, σ([1, ∞))) from sampled s and the η_t integral cap.
SigmaDistance dist_to_sigma(const StarlikeDomain& domain, double t, const SigmaDistanceOptions& options = {});

/// Bracket of ∫_a^b dt/ω(t): ω is non-decreasing, so right and left Riemann
/// sums on a geometric grid bound the integral from below and above.
std::pair<double, double> omega_integral_bounds(const StarlikeDomain& domain, double a, double b, int cells = 256);

}  // namespace starlike
