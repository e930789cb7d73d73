#pragma once

#include <string>
#include <vector>

#include "starlike/domain.hpp"

namespace starlike {

enum class SlopeKind { NonTangential, TangentialPlus, TangentialMinus, Mixed, Inconclusive };

const char* to_string(SlopeKind kind);

struct RatioSample {
    double t;
    double rho;  // δ⁺(t)/δ⁻(t)
};

struct ClassifyOptions {
    double lambda = 2.302585092994046;     // |log ρ| ≤ Λ counts as bounded (log 10)
    double lambda_up = 2.302585092994046;  // |log ρ| ≥ Λ↑ counts as divergent (log 10)
    double tail_fraction = 0.5;            // trailing share of samples used for tail statistics
    int min_alternations = 3;              // bounded/divergent label changes required for Mixed
};

struct TailStatistics {
    std::size_t count = 0;
    double min_log = 0.0;  // min log ρ over the tail
    double max_log = 0.0;  // max log ρ over the tail
    double trend = 0.0;    // least-squares slope of log ρ against log t
};

/// Maximal run of consecutive samples sharing one label.
struct Excursion {
    double t_begin;
    double t_end;
    char label;  // 'L' bounded, 'P' log ρ ≥ Λ↑, 'M' log ρ ≤ −Λ↑, '-' in between
};

struct SlopeVerdict {
    SlopeKind kind = SlopeKind::Inconclusive;
    std::vector<RatioSample> evidence;
    TailStatistics tail;
    double horizon = 0.0;
    ClassifyOptions thresholds;
    int alternations = 0;
    std::vector<Excursion> excursions;
};

/// lo, lo·r, lo·r², … capped by hi (hi always included).
std::vector<double> geometric_grid(double lo, double hi, double ratio);

/// ρ(t) = δ⁺_{Ω,p}(t)/δ⁻_{Ω,p}(t) on the grid. Throws PointOutsideDomain.
std::vector<RatioSample> ratio_trace(const StarlikeDomain& domain, cplx p, const std::vector<double>& grid);

/// Verdict from a ratio trace: Mixed when bounded and divergent labels
/// alternate at least min_alternations times over the whole trace and both
/// occur in the tail; otherwise decided by the tail alone. Throws EmptySequence.
SlopeVerdict classify_trace(const std::vector<RatioSample>& trace, const ClassifyOptions& options = {});

/// Throws EmptySequence or InvalidArgument (not increasing).
SlopeVerdict classify_sequence(const StarlikeDomain& domain, cplx p, const std::vector<double>& t_sequence,
                               const ClassifyOptions& options = {});

/// Classifies on a geometric grid from the first t = 2^k (k ≥ 0) with
/// p + it ∈ Ω up to the horizon.
SlopeVerdict classify_orbit(const StarlikeDomain& domain, cplx p, double horizon = 1e6, double ratio = 1.05,
                            const ClassifyOptions& options = {});

enum class SemigroupKind { GroupHyperbolic, GroupParabolic, Hyperbolic, ParabolicPositiveStep, ParabolicZeroStep };

const char* to_string(SemigroupKind kind);

struct SemigroupType {
    SemigroupKind kind = SemigroupKind::ParabolicZeroStep;
    double finite_lo = 0.0;  // the domain lies in {finite_lo < Re < finite_hi}
    double finite_hi = 0.0;
    bool exact_model = false;  // Ω is itself the strip or half-plane
    std::string witness;
};

SemigroupType semigroup_type(const StarlikeDomain& domain);

}  // namespace starlike
