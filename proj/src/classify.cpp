#include "starlike/classify.hpp"

#include <algorithm>
#include <cmath>

#include "starlike/errors.hpp"

namespace starlike {

const char* to_string(SlopeKind kind) {
    switch (kind) {
        case SlopeKind::NonTangential: return "NonTangential";
        case SlopeKind::TangentialPlus: return "TangentialPlus";
        case SlopeKind::TangentialMinus: return "TangentialMinus";
        case SlopeKind::Mixed: return "Mixed";
        case SlopeKind::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

const char* to_string(SemigroupKind kind) {
    switch (kind) {
        case SemigroupKind::GroupHyperbolic: return "group_hyperbolic";
        case SemigroupKind::GroupParabolic: return "group_parabolic";
        case SemigroupKind::Hyperbolic: return "hyperbolic";
        case SemigroupKind::ParabolicPositiveStep: return "parabolic_positive_step";
        case SemigroupKind::ParabolicZeroStep: return "parabolic_zero_step";
    }
    return "unknown";
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
        throw Error(ErrorCode::InvalidArgument, "geometric grid needs 0 < lo <= hi < inf");
    if (!(ratio > 1.0)) throw Error(ErrorCode::InvalidArgument, "geometric grid ratio must exceed 1");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = lo * std::pow(ratio, k);
        if (t >= hi * (1.0 - 1e-12)) break;
        out.push_back(t);
    }
    out.push_back(hi);
    return out;
}

std::vector<RatioSample> ratio_trace(const StarlikeDomain& domain, cplx p, const std::vector<double>& grid) {
    std::vector<RatioSample> out;
    out.reserve(grid.size());
    for (double t : grid) {
        const AxisGaugeSample g = half_gauges(domain, p, t);
        out.push_back({t, g.delta_plus / g.delta_minus});
    }
    return out;
}

namespace {

char label_of(double log_rho, const ClassifyOptions& o) {
    if (std::abs(log_rho) <= o.lambda) return 'L';
    if (log_rho >= o.lambda_up) return 'P';
    if (log_rho <= -o.lambda_up) return 'M';
    return '-';
}

}  // namespace

SlopeVerdict classify_trace(const std::vector<RatioSample>& trace, const ClassifyOptions& options) {
    if (trace.empty()) throw Error(ErrorCode::EmptySequence, "cannot classify an empty sequence");
    if (!(options.lambda > 0.0) || !(options.lambda_up > 0.0) || !(options.tail_fraction > 0.0) ||
        options.tail_fraction > 1.0)
        throw Error(ErrorCode::InvalidArgument, "thresholds must be positive and the tail fraction in (0, 1]");
    SlopeVerdict v;
    v.evidence = trace;
    v.horizon = trace.back().t;
    v.thresholds = options;

    std::vector<char> labels;
    for (const RatioSample& s : trace) labels.push_back(label_of(std::log(s.rho), options));
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (v.excursions.empty() || v.excursions.back().label != labels[i])
            v.excursions.push_back({trace[i].t, trace[i].t, labels[i]});
        else
            v.excursions.back().t_end = trace[i].t;
    }
    // Alternations between bounded and divergent runs; in-between runs are skipped.
    char last = 0;
    for (const Excursion& e : v.excursions) {
        if (e.label == '-') continue;
        if (last != 0 && e.label != last) ++v.alternations;
        last = e.label;
    }

    const std::size_t n = trace.size();
    const std::size_t tail_count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(options.tail_fraction * n)));
    const std::size_t first = n - std::min(n, tail_count);
    v.tail.count = n - first;
    v.tail.min_log = INFINITY;
    v.tail.max_log = -INFINITY;
    bool any_low = false, all_low = true, any_high = false, all_plus = true, all_minus = true;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        const double lr = std::log(trace[i].rho);
        v.tail.min_log = std::min(v.tail.min_log, lr);
        v.tail.max_log = std::max(v.tail.max_log, lr);
        any_low |= labels[i] == 'L';
        all_low &= labels[i] == 'L';
        any_high |= labels[i] == 'P' || labels[i] == 'M';
        all_plus &= labels[i] == 'P';
        all_minus &= labels[i] == 'M';
        mx += std::log(trace[i].t);
        my += lr;
    }
    mx /= v.tail.count;
    my /= v.tail.count;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        const double dx = std::log(trace[i].t) - mx;
        sxy += dx * (std::log(trace[i].rho) - my);
        sxx += dx * dx;
    }
    v.tail.trend = sxx > 0.0 ? sxy / sxx : 0.0;

    // ρ = δ⁺/δ⁻ → ∞ means the orbit approaches with slope −π/2.
    if (v.alternations >= options.min_alternations && any_low && any_high)
        v.kind = SlopeKind::Mixed;
    else if (all_low)
        v.kind = SlopeKind::NonTangential;
    else if (all_plus && (v.tail.count == 1 || v.tail.trend > 0.0))
        v.kind = SlopeKind::TangentialMinus;
    else if (all_minus && (v.tail.count == 1 || v.tail.trend < 0.0))
        v.kind = SlopeKind::TangentialPlus;
    else
        v.kind = SlopeKind::Inconclusive;
    return v;
}

SlopeVerdict classify_sequence(const StarlikeDomain& domain, cplx p, const std::vector<double>& t_sequence,
                               const ClassifyOptions& options) {
    if (t_sequence.empty()) throw Error(ErrorCode::EmptySequence, "cannot classify an empty sequence");
    for (std::size_t i = 1; i < t_sequence.size(); ++i)
        if (!(t_sequence[i] > t_sequence[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "classify_sequence needs an increasing sequence");
    return classify_trace(ratio_trace(domain, p, t_sequence), options);
}

SlopeVerdict classify_orbit(const StarlikeDomain& domain, cplx p, double horizon, double ratio,
                            const ClassifyOptions& options) {
    double start = 1.0;
    while (!contains(domain, p + cplx(0.0, start))) {
        start *= 2.0;
        if (!(start < horizon)) throw Error(ErrorCode::PointOutsideDomain, "the vertical ray misses the domain below the horizon");
    }
    return classify_trace(ratio_trace(domain, p, geometric_grid(start, horizon, ratio)), options);
}

SemigroupType semigroup_type(const StarlikeDomain& domain) {
    SemigroupType out;
    const auto [lo, hi] = domain.finite_component();
    out.finite_lo = lo;
    out.finite_hi = hi;
    // Ω is exactly {lo < Re < hi} when every piece inside the finite component is −∞.
    bool exact = true;
    for (const ProfilePiece& piece : domain.profile().pieces) {
        if (piece.hi <= lo || piece.lo >= hi) continue;
        if (piece.kind != PieceKind::MinusInfinity) exact = false;
    }
    out.exact_model = exact;
    const bool lo_finite = std::isfinite(lo), hi_finite = std::isfinite(hi);
    if (lo_finite && hi_finite) {
        out.kind = exact ? SemigroupKind::GroupHyperbolic : SemigroupKind::Hyperbolic;
        out.witness = "contained in the vertical strip " + std::to_string(lo) + " < Re < " + std::to_string(hi);
    } else if (lo_finite || hi_finite) {
        out.kind = exact ? SemigroupKind::GroupParabolic : SemigroupKind::ParabolicPositiveStep;
        out.witness = lo_finite ? "contained in the half-plane Re > " + std::to_string(lo)
                                : "contained in the half-plane Re < " + std::to_string(hi);
    } else {
        out.kind = SemigroupKind::ParabolicZeroStep;
        out.witness = "not contained in any vertical half-plane";
    }
    return out;
}

}  // namespace starlike
