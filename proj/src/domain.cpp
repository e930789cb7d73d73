#include "starlike/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "starlike/errors.hpp"

namespace starlike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBrackets = 256;
constexpr int kMaxDegree = 8;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Running minimum with the deterministic tie-break rule. Candidates closer
// than the cluster radius belong to the same local minimum; among those the
// one with the smaller stationarity residual wins, since distances alone
// cannot resolve a flat minimum beyond the square root of the rounding error.
struct Best {
    bool found = false;
    double d = kInf;
    cplx foot{};
    double residual = 0.0;

    void consider(double dist, cplx f, double res = 0.0) {
        if (!std::isfinite(dist)) return;
        if (!found) {
            found = true;
            d = dist;
            foot = f;
            residual = res;
            return;
        }
        const double tol = 1e-12 * (1.0 + d);
        if (dist < d - tol) {
            d = dist;
            foot = f;
            residual = res;
        } else if (dist <= d + tol) {
            if (std::abs(f - foot) <= 1e-6 * (1.0 + d)) {
                if (res < residual) {
                    foot = f;
                    residual = res;
                    d = std::min(d, dist);
                }
                return;
            }
            const double ra = std::abs(f.real()), rb = std::abs(foot.real());
            if (ra < rb || (ra == rb && f.imag() < foot.imag())) {
                foot = f;
                residual = res;
            }
            d = std::min(d, dist);
        }
    }
};

class GraphSearch {
public:
    GraphSearch(const GraphArc& arc, cplx z) : arc_(arc), a_(z.real()), b_(z.imag()) {}

    double dist(double x) const { return std::hypot(x - a_, arc_.poly(x) - b_); }
    // Half the derivative of the squared distance.
    double slope(double x) const { return (x - a_) + (arc_.poly(x) - b_) * arc_.dpoly(x); }
    void consider(Best& best, double x) const { best.consider(dist(x), {x, arc_.poly(x)}, std::abs(slope(x))); }

    void run(double lo, double hi, Best& best) const {
        const int deg = arc_.poly.degree();
        if (deg <= 1) {
            const double c0 = arc_.poly.coeffs()[0];
            const double c1 = deg == 1 ? arc_.poly.coeffs()[1] : 0.0;
            const double xs = (a_ + c1 * (b_ - c0)) / (1.0 + c1 * c1);
            consider(best, std::clamp(xs, lo, hi));
            return;
        }
        consider(best, std::clamp(a_, lo, hi));
        if (std::isfinite(lo)) consider(best, lo);
        if (std::isfinite(hi)) consider(best, hi);
        double prev_width = kInf;
        for (int pass = 0; pass < 6; ++pass) {
            const double r = best.d;
            const double wl = std::max(lo, a_ - r);
            const double wh = std::min(hi, a_ + r);
            if (wl > wh) return;
            const double width = wh - wl;
            if (!(width < 0.5 * prev_width)) return;
            prev_width = width;
            scan(wl, wh, best);
        }
    }

private:
    void scan(double lo, double hi, Best& best) const {
        if (!(hi > lo)) {
            consider(best, lo);
            return;
        }
        double xs[kBrackets + 1], gs[kBrackets + 1], fs[kBrackets + 1];
        for (int i = 0; i <= kBrackets; ++i) {
            const double x = i == kBrackets ? hi : lo + (hi - lo) * (static_cast<double>(i) / kBrackets);
            xs[i] = x;
            gs[i] = slope(x);
            fs[i] = dist(x);
        }
        best.consider(fs[0], {xs[0], arc_.poly(xs[0])}, std::abs(gs[0]));
        best.consider(fs[kBrackets], {xs[kBrackets], arc_.poly(xs[kBrackets])}, std::abs(gs[kBrackets]));
        for (int i = 0; i < kBrackets; ++i)
            if (gs[i] <= 0.0 && gs[i + 1] > 0.0) bisect(xs[i], xs[i + 1], best);
        // Discrete minima catch pairs of stationary points sharing a bracket.
        for (int i = 1; i < kBrackets; ++i)
            if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1]) golden(xs[i - 1], xs[i + 1], best);
        if (fs[0] <= fs[1]) golden(xs[0], xs[1], best);
        if (fs[kBrackets] <= fs[kBrackets - 1]) golden(xs[kBrackets - 1], xs[kBrackets], best);
    }

    void bisect(double lo, double hi, Best& best) const {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // bracket exhausted at machine precision
            (slope(mid) < 0.0 ? lo : hi) = mid;
        }
        consider(best, lo);
        consider(best, hi);
    }

    void golden(double lo, double hi, Best& best) const {
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = dist(x1), f2 = dist(x2);
        for (int it = 0; it < 120 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = dist(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = dist(x2);
            }
        }
        consider(best, f1 <= f2 ? x1 : x2);
    }

    const GraphArc& arc_;
    double a_, b_;
};

double piece_limit(const ProfilePiece& piece, const Polynomial& poly, double x) {
    switch (piece.kind) {
        case PieceKind::Polynomial:
        case PieceKind::Constant: return poly(x);
        case PieceKind::MinusInfinity: return -kInf;
        case PieceKind::PlusInfinity: return kInf;
    }
    return kInf;
}

Polynomial compile(const ProfilePiece& piece) {
    if (piece.kind == PieceKind::Polynomial) return Polynomial(piece.coeffs);
    if (piece.kind == PieceKind::Constant) return Polynomial({piece.level});
    return Polynomial({0.0});
}

BoundaryProfile map_profile(const BoundaryProfile& in, double shift_x, double shift_y) {
    BoundaryProfile out = in;
    for (ProfilePiece& p : out.pieces) {
        p.lo += shift_x;
        p.hi += shift_x;
        if (p.kind == PieceKind::Polynomial)
            p.coeffs = Polynomial(p.coeffs).shifted(-shift_x).plus_constant(shift_y).coeffs();
        else if (p.kind == PieceKind::Constant)
            p.level += shift_y;
    }
    return out;
}

}  // namespace

const char* to_string(PieceKind kind) {
    switch (kind) {
        case PieceKind::Polynomial: return "poly";
        case PieceKind::Constant: return "const";
        case PieceKind::MinusInfinity: return "minus_inf";
        case PieceKind::PlusInfinity: return "plus_inf";
    }
    return "unknown";
}

ProfilePiece ProfilePiece::polynomial(double lo, double hi, std::vector<double> coeffs) {
    return ProfilePiece{lo, hi, PieceKind::Polynomial, std::move(coeffs), 0.0};
}
ProfilePiece ProfilePiece::constant(double lo, double hi, double level) {
    return ProfilePiece{lo, hi, PieceKind::Constant, {}, level};
}
ProfilePiece ProfilePiece::minus_infinity(double lo, double hi) {
    return ProfilePiece{lo, hi, PieceKind::MinusInfinity, {}, 0.0};
}
ProfilePiece ProfilePiece::plus_infinity(double lo, double hi) {
    return ProfilePiece{lo, hi, PieceKind::PlusInfinity, {}, 0.0};
}

double StarlikeDomain::value(double x) const noexcept {
    const auto& ps = profile_.pieces;
    if (std::isnan(x)) return kInf;
    auto it = std::lower_bound(ps.begin(), ps.end(), x,
                               [](const ProfilePiece& p, double v) { return p.hi < v; });
    if (it == ps.end()) --it;
    const std::size_t i = static_cast<std::size_t>(it - ps.begin());
    const double v = piece_limit(ps[i], piece_polys_[i], x);
    if (ps[i].hi == x && i + 1 < ps.size())
        return std::max(v, piece_limit(ps[i + 1], piece_polys_[i + 1], x));
    return v;
}

StarlikeDomain build_domain(const BoundaryProfile& profile) {
    const auto& ps = profile.pieces;
    if (ps.empty()) throw MalformedProfile("profile has no pieces");
    ValidationReport report;

    for (std::size_t i = 0; i < ps.size(); ++i) {
        const ProfilePiece& p = ps[i];
        if (std::isnan(p.lo) || std::isnan(p.hi) || !(p.lo < p.hi))
            throw MalformedProfile("piece " + std::to_string(i) + " has an empty or inverted interval", i);
        if (i > 0) {
            if (p.lo < ps[i - 1].hi)
                throw MalformedProfile("piece " + std::to_string(i) + " overlaps its predecessor", i);
            if (p.lo > ps[i - 1].hi)
                throw MalformedProfile("gap between piece " + std::to_string(i - 1) + " and piece " +
                                           std::to_string(i),
                                       i);
        }
        if (p.kind == PieceKind::Polynomial) {
            if (p.coeffs.empty())
                throw MalformedProfile("polynomial piece " + std::to_string(i) + " has no coefficients", i);
            for (double c : p.coeffs)
                if (!std::isfinite(c))
                    throw MalformedProfile("polynomial piece " + std::to_string(i) + " has a non-finite coefficient",
                                           i);
            if (Polynomial(p.coeffs).degree() > kMaxDegree)
                throw MalformedProfile("polynomial piece " + std::to_string(i) + " exceeds degree 8", i);
        }
        if (p.kind == PieceKind::Constant && !std::isfinite(p.level))
            throw MalformedProfile("constant piece " + std::to_string(i) + " has a non-finite level", i);
    }
    if (ps.front().lo != -kInf) throw MalformedProfile("first piece must start at -inf", 0);
    if (ps.back().hi != kInf) throw MalformedProfile("last piece must end at +inf", ps.size() - 1);
    report.checks.push_back("intervals partition the real line (" + std::to_string(ps.size()) + " pieces)");

    std::size_t first = ps.size(), last = 0;
    bool all_minus = true;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].kind != PieceKind::PlusInfinity) {
            first = std::min(first, i);
            last = i;
        }
        if (ps[i].kind != PieceKind::MinusInfinity) all_minus = false;
    }
    if (first == ps.size()) throw MalformedProfile("profile is +inf everywhere: the domain is empty");
    if (all_minus) throw MalformedProfile("profile is -inf everywhere: the domain is the whole plane");
    for (std::size_t i = first; i <= last; ++i)
        if (ps[i].kind == PieceKind::PlusInfinity)
            throw MalformedProfile("multiple finite components: piece " + std::to_string(i) + " splits the domain", i);
    report.finite_lo = ps[first].lo;
    report.finite_hi = ps[last].hi;
    report.checks.push_back("single finite component (" + fmt(report.finite_lo) + ", " + fmt(report.finite_hi) + ")");
    report.checks.push_back("polynomial degrees <= 8");

    StarlikeDomain d;
    d.profile_ = profile;
    d.piece_polys_.reserve(ps.size());
    for (const ProfilePiece& p : ps) d.piece_polys_.push_back(compile(p));

    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].kind == PieceKind::Polynomial || ps[i].kind == PieceKind::Constant) {
            const Polynomial& poly = d.piece_polys_[i];
            d.arcs_.emplace_back(GraphArc{ps[i].lo, ps[i].hi, poly, poly.derivative()});
            ++report.graph_arcs;
        }
        if (i + 1 < ps.size()) {
            const double x0 = ps[i].hi;
            const double l = piece_limit(ps[i], d.piece_polys_[i], x0);
            const double r = piece_limit(ps[i + 1], d.piece_polys_[i + 1], x0);
            if (l != r) {
                d.arcs_.emplace_back(VerticalArc{x0, std::min(l, r), std::max(l, r)});
                ++report.vertical_arcs;
            }
        }
    }
    report.checks.push_back("derived " + std::to_string(report.graph_arcs) + " graph arcs and " +
                            std::to_string(report.vertical_arcs) + " vertical arcs");
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i].kind == PieceKind::Polynomial && Polynomial(ps[i].coeffs).degree() >= 1 &&
            (!std::isfinite(ps[i].lo) || !std::isfinite(ps[i].hi)) &&
            Polynomial(ps[i].coeffs).degree() % 2 == 1)
            report.warnings.push_back("piece " + std::to_string(i) +
                                      " is an odd-degree polynomial on an unbounded interval");
    d.report_ = std::move(report);
    return d;
}

StarlikeDomain with_anchor(StarlikeDomain domain, std::optional<cplx> anchor) {
    domain.anchor_ = anchor;
    return domain;
}

bool contains(const StarlikeDomain& domain, cplx z) noexcept {
    if (std::isnan(z.real()) || std::isnan(z.imag())) return false;
    return z.imag() > domain.value(z.real());
}

BoundaryFoot nearest_boundary_point(const StarlikeDomain& domain, cplx z, Side side, double split) {
    const double xmin = side == Side::Plus ? split : -kInf;
    const double xmax = side == Side::Minus ? split : kInf;
    const double a = z.real(), b = z.imag();
    Best best;
    // Cheap candidates first so that the per-arc search windows start small.
    for (const BoundaryArc& arc : domain.arcs()) {
        if (const auto* v = std::get_if<VerticalArc>(&arc)) {
            if (v->x < xmin || v->x > xmax) continue;
            const double yc = std::clamp(b, v->y_lo, v->y_hi);
            best.consider(std::hypot(a - v->x, b - yc), {v->x, yc});
        } else {
            const auto& g = std::get<GraphArc>(arc);
            const double lo = std::max(g.x_lo, xmin), hi = std::min(g.x_hi, xmax);
            if (lo > hi) continue;
            const double xc = std::clamp(a, lo, hi);
            const double res = std::abs((xc - a) + (g.poly(xc) - b) * g.dpoly(xc));
            best.consider(std::hypot(xc - a, g.poly(xc) - b), {xc, g.poly(xc)}, res);
        }
    }
    for (const BoundaryArc& arc : domain.arcs()) {
        const auto* g = std::get_if<GraphArc>(&arc);
        if (!g) continue;
        const double lo = std::max(g->x_lo, xmin), hi = std::min(g->x_hi, xmax);
        if (lo > hi) continue;
        if (best.found && (a - hi >= best.d || lo - a >= best.d)) continue;
        GraphSearch(*g, z).run(lo, hi, best);
    }
    BoundaryFoot out;
    out.found = best.found;
    out.distance = best.found ? best.d : kInf;
    out.foot = best.foot;
    return out;
}

double boundary_distance(const StarlikeDomain& domain, cplx z) {
    if (!contains(domain, z))
        throw Error(ErrorCode::PointOutsideDomain, "point " + fmt(z.real()) + "+" + fmt(z.imag()) + "i is not in the domain");
    return nearest_boundary_point(domain, z).distance;
}

AxisGaugeSample half_gauges(const StarlikeDomain& domain, cplx p, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "gauge height must be positive and finite, got " + fmt(t));
    const cplx z = p + cplx(0.0, t);
    if (!contains(domain, z))
        throw Error(ErrorCode::PointOutsideDomain, "p + it is not in the domain at t = " + fmt(t));
    AxisGaugeSample s;
    s.t = t;
    const BoundaryFoot plus = nearest_boundary_point(domain, z, Side::Plus, p.real());
    const BoundaryFoot minus = nearest_boundary_point(domain, z, Side::Minus, p.real());
    s.delta_tilde_plus = plus.distance;
    s.delta_tilde_minus = minus.distance;
    if (plus.found) s.foot_plus = plus.foot;
    if (minus.found) s.foot_minus = minus.foot;
    s.delta_plus = std::min(s.delta_tilde_plus, t);
    s.delta_minus = std::min(s.delta_tilde_minus, t);
    s.omega = s.delta_plus + s.delta_minus;
    s.clearance = std::min(s.delta_tilde_plus, s.delta_tilde_minus);
    return s;
}

StarlikeDomain translate(const StarlikeDomain& domain, cplx c) {
    StarlikeDomain out = build_domain(map_profile(domain.profile(), c.real(), c.imag()));
    if (domain.anchor()) out = with_anchor(std::move(out), *domain.anchor() + c);
    return out;
}

StarlikeDomain reflect(const StarlikeDomain& domain) {
    BoundaryProfile prof;
    const auto& ps = domain.profile().pieces;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
        ProfilePiece p = *it;
        p.lo = -it->hi;
        p.hi = -it->lo;
        if (p.kind == PieceKind::Polynomial) p.coeffs = Polynomial(p.coeffs).reflected().coeffs();
        prof.pieces.push_back(std::move(p));
    }
    StarlikeDomain out = build_domain(prof);
    if (domain.anchor()) out = with_anchor(std::move(out), -std::conj(*domain.anchor()));
    return out;
}

StarlikeDomain normalize_anchor(const StarlikeDomain& domain, cplx p) {
    const double v = domain.value(p.real());
    if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidAnchor, "Re p = " + fmt(p.real()) + " is not in the finite part of the profile");
    if (std::abs(p.imag() - v) > 1e-12 * (1.0 + std::abs(p)))
        throw Error(ErrorCode::InvalidAnchor, "p is not the boundary foot " + fmt(p.real()) + "+" + fmt(v) +
                                                  "i below a vertical ray");
    StarlikeDomain out = build_domain(map_profile(domain.profile(), -p.real(), -v));
    // The Taylor shift can leave a rounding residue at the new origin; remove it
    // so that 0 lies exactly on the boundary.
    for (int k = 0; k < 3; ++k) {
        const double r = out.value(0.0);
        if (r == 0.0) break;
        out = build_domain(map_profile(out.profile(), 0.0, -r));
    }
    if (out.value(0.0) != 0.0)
        throw Error(ErrorCode::InvalidAnchor, "could not place the anchor exactly on the boundary");
    return with_anchor(std::move(out), cplx(0.0, 0.0));
}

}  // namespace starlike
