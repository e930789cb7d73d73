#include "starlike/gallery.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "starlike/errors.hpp"

namespace starlike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long double kOverflow = 1e300L;

using ld = long double;

// Distance from i·s to the closed region {x ≤ a, y ≤ x²}, for a < 0 < s.
ld region_clearance(ld a, ld s) {
    if (a * a >= s) return -a;  // the column at x = a reaches height s
    // Points (x, s) with x ≤ −√s lie in the region.
    const ld column = std::sqrt(s);
    // On x ≤ a the parabola distance is minimized at the global foot or at a.
    const ld foot = -std::sqrt(std::max<ld>(s - 0.5L, 0.0L));
    const ld x = std::min(a, foot);
    const ld parabola = std::sqrt(x * x + (x * x - s) * (x * x - s));
    return std::min(column, parabola);
}

}  // namespace

StarlikeDomain omega1() {
    BoundaryProfile p;
    p.pieces.push_back(ProfilePiece::polynomial(-kInf, kInf, {0.0, 0.0, 1.0}));
    return normalize_anchor(build_domain(p), {0.0, 0.0});
}

StarlikeDomain omega2() {
    BoundaryProfile p;
    p.pieces.push_back(ProfilePiece::polynomial(-kInf, 0.0, {0.0, 0.0, 1.0}));
    p.pieces.push_back(ProfilePiece::minus_infinity(0.0, kInf));
    return normalize_anchor(build_domain(p), {0.0, 0.0});
}

StarlikeDomain right_half_plane() {
    BoundaryProfile p;
    p.pieces.push_back(ProfilePiece::plus_infinity(-kInf, 0.0));
    p.pieces.push_back(ProfilePiece::minus_infinity(0.0, kInf));
    return build_domain(p);
}

StarlikeDomain vertical_strip(double lo, double hi) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "strip needs lo < hi");
    BoundaryProfile p;
    p.pieces.push_back(ProfilePiece::plus_infinity(-kInf, lo));
    p.pieces.push_back(ProfilePiece::minus_infinity(lo, hi));
    p.pieces.push_back(ProfilePiece::plus_infinity(hi, kInf));
    return build_domain(p);
}

std::pair<StarlikeDomain, Omega3Construction> omega3(int depth, double t1, double margin) {
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "omega3 depth must be at least 1");
    if (!(t1 > 4.0)) throw Error(ErrorCode::InvalidArgument, "omega3 needs t1 > 4");
    if (!(margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega3 margin must be positive");

    Omega3Construction c;
    c.t1 = t1;
    c.margin = margin;
    ld t = t1;
    for (int k = 1; k <= depth; ++k) {
        if (!(t < kOverflow)) throw ConstructionOverflow("omega3 heights exceed 1e300", k - 1);
        const ld b = -1.0L - std::sqrt(t - 0.5L);
        const ld B = b * b;
        // |is − η|² = s²/4 with η = b + iB:  (3/4)s² − 2Bs + (B + B²) = 0.
        const ld disc = B * B - 3.0L * B;
        if (!(disc >= 0.0L)) throw Error(ErrorCode::InvalidArgument, "omega3 quadratic has no real root");
        const ld root = std::sqrt(disc);
        const ld s = (2.0L * B + root) / 1.5L;
        // Stable smaller root from the product of the roots, (B + B²)/(3/4).
        const ld s_small = ((B + B * B) / 0.75L) / s;
        if (!(s > t) || !(s >= B + 0.5L))
            throw Error(ErrorCode::InvalidArgument, "omega3 root does not make eta the nearest foot");
        if (!(s < kOverflow)) throw ConstructionOverflow("omega3 heights exceed 1e300", k - 1);

        // Largest wall a < b whose left region clears i·s by the margin.
        const ld target = 0.5L * s * (1.0L + static_cast<ld>(margin));
        ld hi = b;  // fails
        ld lo = b - 10.0L * s;
        if (!(region_clearance(lo, s) > target))
            throw Error(ErrorCode::InvalidArgument, "omega3 wall search could not bracket a");
        for (int it = 0; it < 200; ++it) {
            const ld mid = 0.5L * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (region_clearance(mid, s) > target ? lo : hi) = mid;
        }
        const ld a = lo;
        // The parabola piece between consecutive walls must stay a non-empty
        // interval once rounded to double.
        const double a_d = static_cast<double>(a), b_d = static_cast<double>(b);
        if (!(a_d < b_d) || (!c.a_seq.empty() && !(b_d < c.a_seq.back())))
            throw ConstructionOverflow("omega3 walls are no longer separated in double precision", k - 1);

        c.t_seq.push_back(static_cast<double>(t));
        c.s_seq.push_back(static_cast<double>(s));
        c.s_alternate.push_back(static_cast<double>(s_small));
        c.a_seq.push_back(static_cast<double>(a));
        c.b_seq.push_back(static_cast<double>(b));
        c.eta_seq.emplace_back(static_cast<double>(b), static_cast<double>(B));
        c.zeta_seq.emplace_back(static_cast<double>(-std::sqrt(t - 0.5L)), static_cast<double>(t - 0.5L));

        t = std::max(s, a * a + 0.5L) + 1.0L;
    }

    // Profile: parabola with the strips (a_k, b_k) carved out, −∞ on x > 0.
    BoundaryProfile p;
    const std::vector<double> sq{0.0, 0.0, 1.0};
    p.pieces.push_back(ProfilePiece::polynomial(-kInf, c.a_seq.back(), sq));
    for (int k = depth - 1; k >= 0; --k) {
        p.pieces.push_back(ProfilePiece::minus_infinity(c.a_seq[k], c.b_seq[k]));
        const double right = k == 0 ? 0.0 : c.a_seq[k - 1];
        p.pieces.push_back(ProfilePiece::polynomial(c.b_seq[k], right, sq));
    }
    p.pieces.push_back(ProfilePiece::minus_infinity(0.0, kInf));
    return {normalize_anchor(build_domain(p), {0.0, 0.0}), std::move(c)};
}

StarlikeDomain gallery_domain(const std::string& name, int depth) {
    if (name == "omega1") return omega1();
    if (name == "omega2") return omega2();
    if (name == "omega3") return omega3(depth).first;
    if (name == "strip") return vertical_strip(-std::numbers::pi / 2, std::numbers::pi / 2);
    if (name == "unit-strip") return vertical_strip(-1.0, 1.0);
    if (name == "half-plane") return right_half_plane();
    throw Error(ErrorCode::InvalidArgument, "unknown gallery domain '" + name + "'");
}

std::vector<std::string> gallery_names() {
    return {"omega1", "omega2", "omega3", "strip", "unit-strip", "half-plane"};
}

}  // namespace starlike
