#include "starlike/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starlike/errors.hpp"

namespace starlike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clearance_of(const StarlikeDomain& domain, cplx z) { return nearest_boundary_point(domain, z).distance; }

void require_inside(const StarlikeDomain& domain, cplx z, const char* what) {
    if (!contains(domain, z)) {
        std::ostringstream os;
        os.precision(17);
        os << what << " " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i is not in the domain";
        throw Error(ErrorCode::PointOutsideDomain, os.str());
    }
}

// One refinement level of length_upper.
double level_sum(const StarlikeDomain& domain, const HyperbolicCurve& curve, double s, double t, double eps) {
    const double L = curve.lipschitz;
    cplx z0 = curve.at(s);
    if (!contains(domain, z0)) throw Error(ErrorCode::CurveLeavesDomain, "curve starts outside the domain");
    double d0 = clearance_of(domain, z0);
    double tau = s;
    double rate = L;  // observed growth of δ per unit parameter (vertical rule)
    double sum = 0.0;
    while (tau < t) {
        double h = curve.upward_vertical ? eps * d0 / std::max(rate, 1e-3 * L) : eps * d0 / L;
        // Cells shrink with δ; a curve running into the boundary would need
        // cells below the parameter resolution.
        if (h < 1e-13 * (1.0 + std::abs(tau)))
            throw Error(ErrorCode::CurveLeavesDomain,
                        "curve reaches the boundary near parameter " + std::to_string(tau));
        double tau1 = 0.0, d1 = 0.0, m = 0.0;
        cplx z1;
        for (;;) {
            tau1 = h >= t - tau ? t : tau + h;
            z1 = curve.at(tau1);
            if (contains(domain, z1)) {
                d1 = clearance_of(domain, z1);
                m = curve.upward_vertical ? d0 : 0.5 * (d0 + d1 - L * (tau1 - tau));
                if (m > 0.0) break;
            }
            h *= 0.5;
            if (h < 1e-15 * (1.0 + std::abs(tau)))
                throw Error(ErrorCode::CurveLeavesDomain, "curve leaves the domain near parameter " + std::to_string(tau));
        }
        sum += (curve.straight ? std::abs(z1 - z0) : L * (tau1 - tau)) / m;
        if (curve.upward_vertical) rate = std::max(0.0, d1 - d0) / (tau1 - tau);
        tau = tau1;
        z0 = z1;
        d0 = d1;
    }
    return sum;
}

// Samples boundary arcs and evaluates the log-ratio witness bound.
struct WitnessSearch {
    cplx z, w;
    double best = 0.0;
    std::optional<cplx> witness;

    void consider(cplx zeta) {
        if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) return;
        const double v = 0.25 * std::abs(std::log(std::abs(z - zeta)) - std::log(std::abs(w - zeta)));
        if (std::isfinite(v) && v > best) {
            best = v;
            witness = zeta;
        }
    }
};

// Parameter samples on [lo, hi] concentrated around the given centers.
std::vector<double> arc_parameters(double lo, double hi, const std::vector<double>& centers, double scale,
                                   const std::vector<std::pair<double, double>>& feet, const LowerBoundOptions& opt) {
    std::vector<double> out;
    const double cmin = *std::min_element(centers.begin(), centers.end());
    const double cmax = *std::max_element(centers.begin(), centers.end());
    const double wl = std::max(lo, cmin - 4.0 * scale);
    const double wh = std::min(hi, cmax + 4.0 * scale);
    if (wl <= wh) {
        const int n = std::max(opt.samples_per_arc, 2);
        for (int i = 0; i < n; ++i) out.push_back(wl + (wh - wl) * (static_cast<double>(i) / (n - 1)));
    }
    for (int k = 0; k <= 60; ++k) {
        const double r = 4.0 * scale * std::ldexp(1.0, k);
        if (cmax + r <= hi && cmax + r >= lo) out.push_back(cmax + r);
        if (cmin - r >= lo && cmin - r <= hi) out.push_back(cmin - r);
    }
    for (const auto& [c, d] : feet) {
        if (c < lo || c > hi) continue;
        out.push_back(c);
        for (int j = 0; j < opt.refinement_levels; ++j) {
            const double r = 4.0 * d * std::ldexp(1.0, -j);
            if (c + r <= hi) out.push_back(c + r);
            if (c - r >= lo) out.push_back(c - r);
        }
    }
    if (std::isfinite(lo)) out.push_back(lo);
    if (std::isfinite(hi)) out.push_back(hi);
    return out;
}

// Interval of abscissae that can meet Ω at height y, plus a bound on δ over
// unbounded constant tails. Returns false when the horizontal slice is unbounded
// in a way that lets δ grow without bound.
struct Slice {
    double lo, hi, tail_bound;
};

bool end_bound(const ProfilePiece& piece, double y, bool left, double& x_end, double& tail) {
    switch (piece.kind) {
        case PieceKind::PlusInfinity:
            x_end = left ? piece.hi : piece.lo;
            return true;
        case PieceKind::MinusInfinity: return false;
        case PieceKind::Constant:
            x_end = left ? piece.hi : piece.lo;
            if (piece.level < y) tail = std::max(tail, y - piece.level);
            return true;
        case PieceKind::Polynomial: {
            const Polynomial p(piece.coeffs);
            const int n = p.degree();
            const double cn = p.coeffs()[n];
            if (n == 0) {
                x_end = left ? piece.hi : piece.lo;
                if (cn < y) tail = std::max(tail, y - cn);
                return true;
            }
            // Only an even degree with positive leading coefficient closes the slice.
            if (n % 2 == 1 || cn < 0.0) return false;
            // Cauchy bound on the real roots of p − y.
            double r = 0.0;
            for (int k = 0; k < n; ++k) {
                const double ck = k == 0 ? p.coeffs()[0] - y : p.coeffs()[k];
                r = std::max(r, std::abs(ck / cn));
            }
            r += 1.0;
            x_end = left ? std::min(-r, piece.hi) : std::max(r, piece.lo);
            return true;
        }
    }
    return false;
}

std::optional<Slice> horizontal_slice(const StarlikeDomain& domain, double y) {
    const auto& ps = domain.profile().pieces;
    Slice s{0.0, 0.0, 0.0};
    if (!end_bound(ps.front(), y, true, s.lo, s.tail_bound)) return std::nullopt;
    if (!end_bound(ps.back(), y, false, s.hi, s.tail_bound)) return std::nullopt;
    if (ps.size() == 1) {
        // A single unbounded piece: both ends came from the same polynomial or constant.
        if (ps.front().kind == PieceKind::Constant) return std::nullopt;
    }
    if (s.lo > s.hi) std::swap(s.lo, s.hi);
    return s;
}

// Upper bound on sup_x δ(x + iy); +∞ when unknown.
double slice_sup(const StarlikeDomain& domain, double y, int abscissae) {
    const auto slice = horizontal_slice(domain, y);
    if (!slice) return kInf;
    const int n = std::max(abscissae, 2);
    const double h = (slice->hi - slice->lo) / n;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        const cplx z(i == n ? slice->hi : slice->lo + h * i, y);
        if (contains(domain, z)) m = std::max(m, clearance_of(domain, z));
    }
    // δ to the complement is 1-Lipschitz, so the grid maximum misses at most h/2.
    return std::max(m + 0.5 * h, slice->tail_bound);
}

double level_crossing_bound(const StarlikeDomain& domain, double y_lo, double y_hi, const LowerBoundOptions& opt) {
    if (!(y_hi > y_lo)) return 0.0;
    if (!horizontal_slice(domain, y_hi)) return 0.0;
    // Heights geometric in (y − y_lo + s0); the slice maximum is non-decreasing
    // in y, so each cell contributes at least Δy / M(top of cell).
    const double s0 = std::max(slice_sup(domain, y_lo, opt.crossing_abscissae), 1e-12);
    if (!std::isfinite(s0)) return 0.0;
    const int n = std::max(opt.crossing_heights, 1);
    const double span = y_hi - y_lo;
    double integral = 0.0, prev = y_lo;
    for (int j = 1; j <= n; ++j) {
        const double y = j == n ? y_hi : y_lo - s0 + s0 * std::pow(1.0 + span / s0, static_cast<double>(j) / n);
        const double m = slice_sup(domain, y, opt.crossing_abscissae);
        if (!std::isfinite(m)) return 0.25 * integral;
        integral += (y - prev) / m;
        prev = y;
    }
    return 0.25 * integral;
}

}  // namespace

HyperbolicCurve HyperbolicCurve::segment(cplx z0, cplx z1) {
    HyperbolicCurve c;
    c.at = [z0, z1](double tau) { return tau >= 1.0 ? z1 : z0 + tau * (z1 - z0); };
    c.lipschitz = std::abs(z1 - z0);
    c.t_min = 0.0;
    c.t_max = 1.0;
    c.upward_vertical = z0.real() == z1.real() && z1.imag() > z0.imag();
    c.straight = true;
    return c;
}

HyperbolicCurve HyperbolicCurve::vertical_ray(cplx p) {
    HyperbolicCurve c;
    c.at = [p](double t) { return p + cplx(0.0, t); };
    c.lipschitz = 1.0;
    c.t_min = 0.0;
    c.upward_vertical = true;
    c.straight = true;
    return c;
}

const char* to_string(LowerBoundSource source) {
    switch (source) {
        case LowerBoundSource::None: return "none";
        case LowerBoundSource::Witness: return "witness";
        case LowerBoundSource::DistanceLemma: return "distance_lemma";
        case LowerBoundSource::LevelCrossing: return "level_crossing";
    }
    return "unknown";
}

const char* to_string(CertificateVerdict verdict) {
    switch (verdict) {
        case CertificateVerdict::Certified: return "certified";
        case CertificateVerdict::RefutedUpToHorizon: return "refuted_up_to_horizon";
        case CertificateVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::pair<double, double> metric_bounds(const StarlikeDomain& domain, cplx z, cplx v) {
    const double d = boundary_distance(domain, z);
    const double a = std::abs(v);
    return {a / (4.0 * d), a / d};
}

double length_upper(const StarlikeDomain& domain, const HyperbolicCurve& curve, double s, double t,
                    const LengthOptions& options) {
    if (!(s <= t)) throw Error(ErrorCode::InvalidArgument, "length_upper needs s <= t");
    if (s < curve.t_min || t > curve.t_max)
        throw Error(ErrorCode::InvalidArgument, "length_upper window exceeds the curve parameter range");
    if (s == t) {
        if (!contains(domain, curve.at(s))) throw Error(ErrorCode::CurveLeavesDomain, "curve point outside the domain");
        return 0.0;
    }
    if (!(curve.lipschitz > 0.0)) {
        if (!contains(domain, curve.at(s))) throw Error(ErrorCode::CurveLeavesDomain, "curve point outside the domain");
        return 0.0;  // constant curve
    }
    double best = kInf, prev = 0.0;
    for (int k = 0; k < std::max(options.max_levels, 1); ++k) {
        const double b = level_sum(domain, curve, s, t, std::ldexp(options.eps0, -k));
        best = std::min(best, b);
        if (k > 0 && std::abs(b - prev) <= options.rtol * b) break;
        prev = b;
    }
    return best;
}

LowerBound dist_lower(const StarlikeDomain& domain, cplx z, cplx w, const LowerBoundOptions& options) {
    require_inside(domain, z, "point");
    require_inside(domain, w, "point");
    LowerBound out;
    if (z == w) return out;

    const BoundaryFoot fz = nearest_boundary_point(domain, z);
    const BoundaryFoot fw = nearest_boundary_point(domain, w);
    out.distance_lemma_value = 0.25 * std::log1p(std::abs(z - w) / std::min(fz.distance, fw.distance));

    WitnessSearch ws{z, w, 0.0, std::nullopt};
    ws.consider(fz.foot);
    ws.consider(fw.foot);
    const double scale = std::abs(z - w) + fz.distance + fw.distance;
    for (const BoundaryArc& arc : domain.arcs()) {
        if (const auto* g = std::get_if<GraphArc>(&arc)) {
            const auto params = arc_parameters(g->x_lo, g->x_hi, {z.real(), w.real(), fz.foot.real(), fw.foot.real()},
                                               scale, {{fz.foot.real(), fz.distance}, {fw.foot.real(), fw.distance}},
                                               options);
            for (double x : params) ws.consider({x, g->poly(x)});
        } else {
            const auto& v = std::get<VerticalArc>(arc);
            const auto params = arc_parameters(v.y_lo, v.y_hi, {z.imag(), w.imag(), fz.foot.imag(), fw.foot.imag()},
                                               scale, {{fz.foot.imag(), fz.distance}, {fw.foot.imag(), fw.distance}},
                                               options);
            for (double y : params) ws.consider({v.x, y});
        }
    }
    out.witness_value = ws.best;
    out.witness = ws.witness;
    if (options.level_crossing)
        out.level_crossing_value =
            level_crossing_bound(domain, std::min(z.imag(), w.imag()), std::max(z.imag(), w.imag()), options);

    out.value = out.witness_value;
    out.source = out.witness ? LowerBoundSource::Witness : LowerBoundSource::None;
    if (out.distance_lemma_value > out.value) {
        out.value = out.distance_lemma_value;
        out.source = LowerBoundSource::DistanceLemma;
    }
    if (out.level_crossing_value > out.value) {
        out.value = out.level_crossing_value;
        out.source = LowerBoundSource::LevelCrossing;
    }
    return out;
}

double polyline_length_upper(const StarlikeDomain& domain, const std::vector<cplx>& path,
                             const LengthOptions& options) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        cplx a = path[i], b = path[i + 1];
        if (a == b) continue;
        // Hyperbolic length is orientation-free; walk vertical pieces upward.
        if (a.real() == b.real() && b.imag() < a.imag()) std::swap(a, b);
        total += length_upper(domain, HyperbolicCurve::segment(a, b), 0.0, 1.0, options);
    }
    return total;
}

DistanceBound dist_bound(const StarlikeDomain& domain, cplx z, cplx w, const DistanceOptions& options) {
    require_inside(domain, z, "point");
    require_inside(domain, w, "point");
    DistanceBound out;
    const LowerBound lb = dist_lower(domain, z, w, options.lower);
    out.lower = lb.value;
    out.lower_witness = lb.witness;
    out.lower_source = lb.source;
    if (z == w) {
        out.upper = 0.0;
        out.upper_path = {z};
        return out;
    }

    auto path_at = [&](double H) {
        return std::vector<cplx>{z, cplx(z.real(), H), cplx(w.real(), H), w};
    };
    auto try_length = [&](const std::vector<cplx>& path, const LengthOptions& opt) -> double {
        try {
            return polyline_length_upper(domain, path, opt);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CurveLeavesDomain) return kInf;
            throw;
        }
    };

    std::vector<cplx> best_path{z, w};
    double best = try_length(best_path, options.search);

    const double H0 = std::max(z.imag(), w.imag());
    const double d = std::max({boundary_distance(domain, z), boundary_distance(domain, w), 1e-300});
    // Feasibility is monotone in the height because Ω + it ⊂ Ω.
    double u_feasible = -1.0, f_feasible = kInf;
    for (int k = -5; k <= 1000 && u_feasible < 0.0; ++k) {
        const double u = k == -5 ? 0.0 : d * std::ldexp(1.0, k);
        if (!std::isfinite(H0 + u)) break;
        const double f = try_length(path_at(H0 + u), options.search);
        if (std::isfinite(f)) {
            u_feasible = u;
            f_feasible = f;
        }
    }
    if (u_feasible < 0.0) {
        if (!std::isfinite(best))
            throw Error(ErrorCode::PathConstructionFailed, "no ascent path stays inside the domain");
    } else {
        double best_u = u_feasible;
        double best_f = f_feasible;
        auto f_of = [&](double log_u) {
            const double u = std::exp(log_u);
            const double f = try_length(path_at(H0 + u), options.search);
            if (f < best_f) {
                best_f = f;
                best_u = u;
            }
            return f;
        };
        const double u_lo = std::max(u_feasible, 1e-3 * d);
        const double u_hi = std::max({4.0 * u_lo, 4.0 * (std::abs(z.real() - w.real()) + std::abs(z.imag() - w.imag()) + d)});
        double lo = std::log(u_lo), hi = std::log(u_hi);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = f_of(x1), f2 = f_of(x2);
        f_of(lo);
        f_of(hi);
        for (int it = 0; it < options.golden_iterations; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = f_of(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = f_of(x2);
            }
        }
        if (best_f < best) {
            best = best_f;
            best_path = path_at(H0 + best_u);
        }
    }
    if (!std::isfinite(best)) throw Error(ErrorCode::PathConstructionFailed, "no candidate path stays inside the domain");
    // Every refinement level is itself an upper bound; keep the smallest.
    const double refined = try_length(best_path, options.final_length);
    out.upper = std::min(best, refined);
    out.upper_path = std::move(best_path);
    return out;
}

namespace {

struct Fit {
    double A = 1.0, B = 0.0;
};

// A is the smallest slope with ℓ ≤ A(k + 1) on all pairs; B then closes the gap.
Fit fit_pairs(const std::vector<SamplePair>& pairs, const std::vector<std::pair<int, int>>& index,
              const std::function<bool(int, int)>& keep) {
    Fit f;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (keep(index[p].first, index[p].second))
            f.A = std::max(f.A, pairs[p].length_upper / (pairs[p].dist_lower + 1.0));
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (keep(index[p].first, index[p].second))
            f.B = std::max(f.B, pairs[p].length_upper - f.A * pairs[p].dist_lower);
    // Widen B by a few ulps so the replayed margin cannot round below zero.
    f.B = f.B * (1.0 + 1e-12) + 1e-12;
    return f;
}

struct PairTable {
    std::vector<double> segments;
    std::vector<SamplePair> pairs;
    std::vector<std::pair<int, int>> index;
};

PairTable evaluate_pairs(const StarlikeDomain& domain, const HyperbolicCurve& curve, const std::vector<double>& nodes,
                         const CertifyOptions& options) {
    PairTable tab;
    const int n = static_cast<int>(nodes.size());
    tab.segments.resize(n - 1);
    for (int j = 0; j + 1 < n; ++j) tab.segments[j] = length_upper(domain, curve, nodes[j], nodes[j + 1], options.length);
    std::vector<double> prefix(n, 0.0);
    for (int j = 1; j < n; ++j) prefix[j] = prefix[j - 1] + tab.segments[j - 1];
    std::vector<cplx> pts(n);
    for (int j = 0; j < n; ++j) {
        pts[j] = curve.at(nodes[j]);
        if (!contains(domain, pts[j])) throw Error(ErrorCode::CurveLeavesDomain, "curve node outside the domain");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double k = dist_lower(domain, pts[i], pts[j], options.lower).value;
            tab.pairs.push_back({nodes[i], nodes[j], prefix[j] - prefix[i], k});
            tab.index.emplace_back(i, j);
        }
    return tab;
}

}  // namespace

QuasiGeodesicCertificate certify_quasi_geodesic(const StarlikeDomain& domain, const HyperbolicCurve& curve, double a,
                                                double T, int pair_budget, const CertifyOptions& options) {
    if (!(a < T) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "certify needs a finite window a < T");
    if (a < curve.t_min || T > curve.t_max) throw Error(ErrorCode::InvalidArgument, "window exceeds the curve range");
    int n = 2;
    while ((n + 1) * n / 2 <= pair_budget) ++n;
    if (n % 2 == 0) --n;  // odd, so the coarse grid keeps both endpoints
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "pair budget must allow at least 3 nodes");

    QuasiGeodesicCertificate cert;
    cert.window_lo = a;
    cert.window_hi = T;
    cert.A_max = options.A_max;
    cert.stability_threshold = options.stability_threshold;
    cert.nodes.resize(n);
    const double span = T - a + 1.0;
    for (int j = 0; j < n; ++j) cert.nodes[j] = a - 1.0 + std::pow(span, static_cast<double>(j) / (n - 1));
    cert.nodes.front() = a;
    cert.nodes.back() = T;

    PairTable tab = evaluate_pairs(domain, curve, cert.nodes, options);
    cert.segment_lengths = tab.segments;
    const Fit fine = fit_pairs(tab.pairs, tab.index, [](int, int) { return true; });
    const Fit coarse = fit_pairs(tab.pairs, tab.index, [](int i, int j) { return i % 2 == 0 && j % 2 == 0; });
    cert.A = fine.A;
    cert.B = fine.B;
    cert.A_coarse = coarse.A;
    cert.stable = std::abs(fine.A - coarse.A) <= options.stability_threshold * fine.A;
    for (int m = 2; m < n; ++m) {
        const Fit f = fit_pairs(tab.pairs, tab.index, [m](int, int j) { return j <= m; });
        cert.horizon_trace.emplace_back(cert.nodes[m], f.A);
    }
    cert.sample_pairs = std::move(tab.pairs);
    cert.margin = kInf;
    for (const SamplePair& p : cert.sample_pairs)
        cert.margin = std::min(cert.margin, cert.A * p.dist_lower + cert.B - p.length_upper);

    const std::size_t h = cert.horizon_trace.size();
    const bool growing = h >= 2 && cert.horizon_trace[h - 1].second > cert.horizon_trace[h / 2].second;
    if (cert.A > options.A_max && growing)
        cert.verdict = CertificateVerdict::RefutedUpToHorizon;
    else if (cert.A <= options.A_max && cert.stable && cert.margin >= 0.0)
        cert.verdict = CertificateVerdict::Certified;
    else
        cert.verdict = CertificateVerdict::Inconclusive;
    return cert;
}

double replay_certificate(const StarlikeDomain& domain, const HyperbolicCurve& curve,
                          const QuasiGeodesicCertificate& certificate, const CertifyOptions& options) {
    const PairTable tab = evaluate_pairs(domain, curve, certificate.nodes, options);
    double margin = kInf;
    for (const SamplePair& p : tab.pairs)
        margin = std::min(margin, certificate.A * p.dist_lower + certificate.B - p.length_upper);
    return margin;
}

}  // namespace starlike
