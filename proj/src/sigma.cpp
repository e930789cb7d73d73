#include "starlike/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "starlike/errors.hpp"

namespace starlike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lipschitz constant of F(s) = ω(s) − (1/6)·min|σ(s) − z±|: ω is 2-Lipschitz
// and σ is 2-Lipschitz.
constexpr double kMarkerLipschitz = 2.0 + 2.0 / 6.0;
constexpr double kBracketRelTol = 1e-12;
constexpr std::size_t kStepBudget = 200000;

cplx anchor_of(const StarlikeDomain& domain) {
    if (!domain.anchored())
        throw Error(ErrorCode::NotAnchored, "domain carries no anchor; normalize it at a boundary foot first");
    return *domain.anchor();
}

double slack(double x) { return 1e-9 * (1.0 + std::abs(x)); }

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::vector<double> geometric_points(double lo, double hi, double ratio) {
    std::vector<double> out;
    for (double t = lo; t < hi; t *= ratio) out.push_back(t);
    out.push_back(hi);
    return out;
}

}  // namespace

SigmaCurve::SigmaCurve(StarlikeDomain domain) : domain_(std::move(domain)) { anchor_of(domain_); }

AxisGaugeSample SigmaCurve::gauges(double t) const { return half_gauges(domain_, *domain_.anchor(), t); }

cplx SigmaCurve::operator()(double t) const { return *domain_.anchor() + point(gauges(t)); }

HyperbolicCurve SigmaCurve::as_curve(double t_min) const {
    // A profile symmetric about Re p gives δ⁺ = δ⁻, so σ is the vertical ray
    // and the exact monotone rule applies.
    const cplx p = *domain_.anchor();
    const StarlikeDomain centred = translate(domain_, -p);
    if (reflect(centred).profile() == centred.profile()) {
        HyperbolicCurve ray = HyperbolicCurve::vertical_ray(p);
        ray.t_min = t_min;
        return ray;
    }
    auto dom = std::make_shared<const StarlikeDomain>(domain_);
    HyperbolicCurve c;
    c.at = [dom](double t) { return *dom->anchor() + point(half_gauges(*dom, *dom->anchor(), t)); };
    c.lipschitz = std::sqrt(2.0);
    c.t_min = t_min;
    return c;
}

SigmaCurve build_sigma(const StarlikeDomain& domain) { return SigmaCurve(domain); }

ClearanceCheck clearance_check(const SigmaCurve& sigma, double t) {
    if (!(t >= 1.0)) throw Error(ErrorCode::InvalidArgument, "clearance_check needs t >= 1");
    const AxisGaugeSample g = sigma.gauges(t);
    const cplx z = *sigma.domain().anchor() + SigmaCurve::point(g);
    ClearanceCheck out;
    out.t = t;
    out.clearance = contains(sigma.domain(), z) ? boundary_distance(sigma.domain(), z) : 0.0;
    out.bound = g.omega / (2.0 * std::sqrt(2.0));
    out.pass = out.clearance >= out.bound - 1e-9;
    return out;
}

EasyCaseResult easy_case_test(const StarlikeDomain& domain, double horizon, cplx p, double ratio) {
    if (!(horizon >= 1.0)) throw Error(ErrorCode::InvalidArgument, "easy_case_test needs horizon >= 1");
    if (!(ratio > 1.0)) throw Error(ErrorCode::InvalidArgument, "grid ratio must exceed 1");
    EasyCaseResult out;
    out.horizon = horizon;
    bool below = false;
    for (double t : geometric_points(1.0, horizon, ratio)) {
        if (!contains(domain, p + cplx(0.0, t))) continue;
        const AxisGaugeSample g = half_gauges(domain, p, t);
        out.trace.emplace_back(t, g.omega / t);
        if (!below && g.omega < t) {
            below = true;
            out.T0 = t;
        }
    }
    if (out.trace.empty()) throw Error(ErrorCode::PointOutsideDomain, "the vertical ray misses the domain below the horizon");

    const double tail_start = std::sqrt(horizon);
    std::vector<double> lx, ly;
    for (const auto& [t, r] : out.trace)
        if (t >= tail_start) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(r));
        }
    if (lx.size() < 2) {
        lx.clear();
        ly.clear();
        for (std::size_t i = out.trace.size() / 2; i < out.trace.size(); ++i) {
            lx.push_back(std::log(out.trace[i].first));
            ly.push_back(std::log(out.trace[i].second));
        }
    }
    out.tail_slope = least_squares_slope(lx, ly);
    const bool decaying = out.tail_slope < -0.05 || (ly.size() >= 2 && ly.back() < ly.front() - std::log(2.0));
    if (decaying && below) {
        out.holds = false;
    } else {
        out.holds = true;
        out.T0 = 0.0;
        out.alpha = kInf;
        for (double v : ly) out.alpha = std::min(out.alpha, std::exp(v));
    }
    return out;
}

const char* to_string(AssumptionBranch branch) {
    return branch == AssumptionBranch::EasyCase ? "easy_case" : "marker_case";
}

namespace {

void record_marker(MarkerSequence& m, const AxisGaugeSample& g, cplx anchor) {
    if (!g.foot_plus || !g.foot_minus)
        throw Error(ErrorCode::MarkerStallDetected, "a half gauge has no boundary foot at t = " + std::to_string(g.t));
    // Work relative to the anchor so that the axis is Re = 0.
    const cplx a = *g.foot_minus - anchor;
    const cplx b = *g.foot_plus - anchor;
    const double y = std::min(a.imag(), b.imag());
    m.t.push_back(g.t);
    m.a_pts.push_back(a);
    m.b_pts.push_back(b);
    m.y.push_back(y);
    m.z_plus.emplace_back(b.real(), y);
    m.z_minus.emplace_back(a.real(), y);
    m.delta_n.push_back(b.real() - a.real());
    m.omega_n.push_back(g.omega);
    m.delta_plus_n.push_back(g.delta_plus);
    m.delta_minus_n.push_back(g.delta_minus);
    m.sigma_n.push_back(SigmaCurve::point(g));
}

struct MarkerSearch {
    const SigmaCurve& sigma;
    cplx zp, zm;
    std::size_t evaluations = 0;

    double F(double s) {
        if (++evaluations > kStepBudget)
            throw Error(ErrorCode::MarkerStallDetected, "marker search made no progress near t = " + std::to_string(s));
        const AxisGaugeSample g = sigma.gauges(s);
        const cplx z = SigmaCurve::point(g);
        return g.omega - std::min(std::abs(z - zp), std::abs(z - zm)) / 6.0;
    }

    // Leftmost point where F turns negative inside [l, r]: returns u with F
    // certified non-negative on [l, u] and F < 0 within kBracketRelTol of u.
    std::optional<double> first_violation(double l, double fl, double r, double fr) {
        if (fl + fr > kMarkerLipschitz * (r - l)) return std::nullopt;  // F > 0 on the whole cell
        if (r - l <= kBracketRelTol * std::max(1.0, r)) {
            if (fr < 0.0) return l;
            return std::nullopt;  // touches zero without crossing
        }
        const double m = 0.5 * (l + r);
        const double fm = F(m);
        if (auto left = first_violation(l, fl, m, fm)) return left;
        return first_violation(m, fm, r, fr);
    }
};

}  // namespace

MarkerSequence build_markers(const StarlikeDomain& domain, std::optional<double> a, double horizon) {
    const cplx anchor = anchor_of(domain);
    const EasyCaseResult ec = easy_case_test(domain, horizon, anchor);
    if (ec.holds)
        throw Error(ErrorCode::BranchMismatch,
                    "omega(t) >= alpha t holds on the sampled tail; markers are only defined in the other case");
    const double start = a.value_or(ec.T0 + 1.0);
    if (!(start > 0.0) || !(start < horizon)) throw Error(ErrorCode::InvalidStart, "marker start must lie in (0, horizon)");

    const SigmaCurve sigma(domain);
    MarkerSequence m;
    m.a = start;
    m.horizon = horizon;
    m.assumption_branch = AssumptionBranch::MarkerCase;
    const AxisGaugeSample g0 = sigma.gauges(start);
    if (!(g0.omega < start))
        throw Error(ErrorCode::InvalidStart, "marker start needs omega(a) < a (omega(a) = " + std::to_string(g0.omega) + ")");
    record_marker(m, g0, anchor);

    for (;;) {
        MarkerSearch search{sigma, m.z_plus.back(), m.z_minus.back()};
        double l = m.t.back();
        double fl = search.F(l);
        if (!(fl > 0.0)) throw Error(ErrorCode::MarkerStallDetected, "marker condition fails at its own start");
        std::optional<double> tn;
        double omega_l = m.omega_n.back();
        while (!tn) {
            if (l >= horizon) break;
            const double r = std::min(l + omega_l / 4.0, horizon);
            const double fr = search.F(r);
            tn = search.first_violation(l, fl, r, fr);
            l = r;
            fl = fr;
            if (!tn) omega_l = sigma.gauges(l).omega;
        }
        if (!tn) {
            if (m.size() == 1)
                throw Error(ErrorCode::MarkerStallDetected, "no marker t_1 below the horizon");
            m.reached_horizon = true;
            return m;
        }
        if (!(*tn > m.t.back())) throw Error(ErrorCode::MarkerStallDetected, "marker heights stopped increasing");
        record_marker(m, sigma.gauges(*tn), anchor);
    }
}

namespace {

class Checker {
public:
    explicit Checker(MarkerReport& report) : report_(report) {}

    void begin(const std::string& name) { report_.checks.push_back(name); }

    // lhs ≤ rhs up to rounding.
    void le(std::size_t n, const std::string& name, double lhs, double rhs) {
        ++report_.evaluations;
        if (!(lhs <= rhs + slack(rhs))) report_.violations.push_back({n, name, lhs, rhs});
    }

    void lt(std::size_t n, const std::string& name, double lhs, double rhs) {
        ++report_.evaluations;
        if (!(lhs < rhs)) report_.violations.push_back({n, name, lhs, rhs});
    }

private:
    MarkerReport& report_;
};

void stored_checks(const MarkerSequence& m, MarkerReport& report) {
    Checker c(report);
    const std::size_t N = m.size();
    c.begin("property_1");
    c.begin("property_2");
    c.begin("property_3");
    c.begin("property_4");
    c.begin("property_5");
    c.begin("separation");
    c.begin("interleaving");
    c.begin("gap_ratio");
    c.begin("delta_n_le_omega");
    for (std::size_t n = 0; n < N; ++n) {
        c.lt(n, "property_1", m.z_minus[n].real(), 0.0);
        c.lt(n, "property_1", 0.0, m.z_plus[n].real());
        c.le(n, "property_2", std::abs(m.z_plus[n].real()), m.delta_plus_n[n]);
        c.le(n, "property_2", std::abs(m.z_minus[n].real()), m.delta_minus_n[n]);
        c.le(n, "property_3", m.y[n], m.t[n]);
        const double far = std::max(std::abs(m.sigma_n[n] - m.z_plus[n]), std::abs(m.sigma_n[n] - m.z_minus[n]));
        c.le(n, "property_4", far, 2.0 * m.omega_n[n]);
        c.le(n, "delta_n_le_omega", m.delta_n[n], m.omega_n[n]);
        if (n == 0) continue;
        const double near =
            std::min(std::abs(m.sigma_n[n] - m.z_plus[n - 1]), std::abs(m.sigma_n[n] - m.z_minus[n - 1]));
        c.le(n, "property_5", std::abs(near - 6.0 * m.omega_n[n]), 1e-6 * 6.0 * m.omega_n[n]);
        const double gap = m.y[n] - m.t[n - 1];
        c.le(n, "separation", 3.0 * m.omega_n[n], gap);
        c.le(n, "separation", gap, std::min(m.t[n] - m.t[n - 1], m.y[n] - m.y[n - 1]));
        c.lt(n, "interleaving", m.t[n - 1], m.y[n]);
        c.le(n, "interleaving", m.y[n], m.t[n]);
        c.le(n, "gap_ratio", 3.0, (m.y[n] - m.y[n - 1]) / m.omega_n[n - 1]);
    }
}

}  // namespace

MarkerReport marker_invariants(const MarkerSequence& markers) {
    MarkerReport report;
    stored_checks(markers, report);
    return report;
}

MarkerReport marker_invariants(const StarlikeDomain& domain, const MarkerSequence& markers) {
    MarkerReport report;
    stored_checks(markers, report);
    const cplx anchor = anchor_of(domain);
    Checker c(report);
    const auto& m = markers;
    const std::size_t N = m.size();
    auto omega = [&](double t) { return half_gauges(domain, anchor, t).omega; };

    c.begin("omega_comparability");
    for (std::size_t n = 1; n < N; ++n) {
        constexpr int kGrid = 16;
        for (int j = 0; j <= kGrid; ++j) {
            const double t = m.y[n] + (m.t[n] - m.y[n]) * j / kGrid;
            if (!(t > 0.0)) continue;
            const double w = omega(t);
            c.le(n, "omega_comparability", w, m.omega_n[n]);
            c.le(n, "omega_comparability", m.omega_n[n], 2.0 * w);
        }
    }

    c.begin("integral_first");
    if (N >= 2) {
        for (double T : {0.5 * (m.a + m.y[1]), m.y[1]}) {
            if (!(T > m.a)) continue;
            const double upper = omega_integral_bounds(domain, m.a, T).second;
            c.le(1, "integral_first", upper, 1.0 + 6.0 * std::log(std::max(1.0, (T - m.y[0]) / m.omega_n[0])));
        }
    }
    c.begin("integral_between");
    for (std::size_t k = 1; k + 1 < N; ++k) {
        const double upper = omega_integral_bounds(domain, m.y[k], m.y[k + 1]).second;
        c.le(k, "integral_between", upper, 8.0 * std::log((m.y[k + 1] - m.y[k]) / m.omega_n[k]));
    }
    c.begin("integral_last");
    for (std::size_t k = 1; k < N; ++k) {
        // Any b in [y_k, y_{k+1}); past the last marker y_{k+1} ≥ t_k + 3ω(t_k).
        const double b = k + 1 < N ? 0.5 * (m.y[k] + m.y[k + 1]) : m.t[k] + 2.0 * m.omega_n[k];
        const double upper = omega_integral_bounds(domain, m.y[k], b).second;
        c.le(k, "integral_last", upper, 2.0 + 6.0 * std::log(std::max(1.0, (b - m.y[k]) / m.omega_n[k])));
    }
    return report;
}

double marker_distance_lower(const MarkerSequence& m, double b) {
    if (m.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty marker sequence");
    if (!(b >= m.a)) throw Error(ErrorCode::InvalidArgument, "marker lower bound needs b >= a");
    std::size_t N = 0;
    while (N + 1 < m.size() && m.y[N + 1] <= b) ++N;
    if (N + 1 == m.size() && !(b < m.t[N] + 3.0 * m.omega_n[N]))
        throw Error(ErrorCode::InvalidArgument, "b lies beyond the range covered by the markers");
    double v;
    if (N == 0) {
        v = 0.25 * (-std::log(2.0) + std::log(std::max(1.0, (b - m.y[0]) / m.omega_n[0])));
    } else {
        v = -std::log(2.0) + std::log((m.y[1] - m.y[0]) / m.omega_n[0]);
        for (std::size_t k = 1; k < N; ++k) v += std::log((m.y[k + 1] - m.y[k]) / m.delta_n[k]);
        v += std::log(std::max(1.0, (b - m.y[N]) / m.delta_n[N]));
        v *= 0.25;
    }
    return std::max(0.0, v);
}

EtaCheck eta_segment_check(const StarlikeDomain& domain, double t) {
    if (!(t >= 1.0)) throw Error(ErrorCode::InvalidArgument, "eta_segment_check needs t >= 1");
    const cplx p = anchor_of(domain);
    const AxisGaugeSample g = half_gauges(domain, p, t);
    const cplx base = p + cplx(0.0, t);
    const double d0 = g.clearance;
    const cplx end = base + 0.5 * (g.delta_plus - g.delta_minus);
    EtaCheck out;
    out.t = t;
    out.bound = std::abs(g.delta_plus - g.delta_minus) / (2.0 * d0);
    out.pass = true;
    constexpr int kGrid = 64;
    for (int j = 0; j < kGrid; ++j) {
        const cplx z = base + (static_cast<double>(j) / (kGrid - 1)) * (end - base);
        const double d = contains(domain, z) ? boundary_distance(domain, z) : 0.0;
        out.min_ratio = std::min(out.min_ratio, d / d0);
        if (!(d >= d0 - slack(d0))) out.pass = false;
    }
    out.length_upper = end == base ? 0.0 : length_upper(domain, HyperbolicCurve::segment(base, end), 0.0, 1.0);
    return out;
}

SigmaDistance dist_to_sigma(const StarlikeDomain& domain, double t, const SigmaDistanceOptions& options) {
    if (!(t >= 1.0)) throw Error(ErrorCode::InvalidArgument, "dist_to_sigma needs t >= 1");
    if (!(options.window_factor > 1.0) || options.samples < 2)
        throw Error(ErrorCode::InvalidArgument, "dist_to_sigma needs a window factor > 1 and at least 2 samples");
    const SigmaCurve sigma(domain);
    const cplx p = *domain.anchor();
    const cplx base = p + cplx(0.0, t);
    const AxisGaugeSample g = sigma.gauges(t);

    SigmaDistance out;
    out.eta_bound = std::abs(g.delta_plus - g.delta_minus) / (2.0 * g.clearance);
    out.ratio_log = out.eta_bound > 0.0 ? std::log(out.eta_bound) : -kInf;

    const double lo = std::max(1.0, t / options.window_factor);
    const double hi = t * options.window_factor;
    std::vector<double> grid;
    for (int j = 0; j < options.samples; ++j)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(j) / (options.samples - 1)));
    grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double best = kInf;
    std::size_t best_index = 0;
    DistanceBound best_bound;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const DistanceBound db = dist_bound(domain, base, sigma(grid[j]), options.distance);
        out.samples.emplace_back(grid[j], db.upper);
        if (db.upper < best) {
            best = db.upper;
            best_index = j;
            best_bound = db;
        }
    }
    out.s_star = grid[best_index];
    out.bound.upper = best;
    out.bound.upper_path = best_bound.upper_path;
    if (out.eta_bound < out.bound.upper) {
        out.bound.upper = out.eta_bound;
        out.bound.upper_path = {base, sigma(t)};
    }
    // A sampled minimum of lower bounds does not bound the distance to the
    // whole curve; report it only when the argmin is bracketed by the grid.
    const bool bracketed = best_index > 0 && best_index + 1 < grid.size();
    if (bracketed) {
        out.bound.lower = std::min(best_bound.lower, out.bound.upper);
        out.bound.lower_witness = best_bound.lower_witness;
        out.bound.lower_source = best_bound.lower_source;
    }
    out.lower_heuristic = true;
    return out;
}

std::pair<double, double> omega_integral_bounds(const StarlikeDomain& domain, double a, double b, int cells) {
    if (!(a > 0.0) || !(b >= a)) throw Error(ErrorCode::InvalidArgument, "omega integral needs 0 < a <= b");
    if (cells < 1) throw Error(ErrorCode::InvalidArgument, "omega integral needs at least one cell");
    const cplx p = anchor_of(domain);
    if (a == b) return {0.0, 0.0};
    double lower = 0.0, upper = 0.0;
    double prev_t = a, prev_w = half_gauges(domain, p, a).omega;
    for (int j = 1; j <= cells; ++j) {
        const double t = j == cells ? b : a * std::pow(b / a, static_cast<double>(j) / cells);
        const double w = half_gauges(domain, p, t).omega;
        upper += (t - prev_t) / prev_w;
        lower += (t - prev_t) / w;
        prev_t = t;
        prev_w = w;
    }
    return {lower, upper};
}

}  // namespace starlike
