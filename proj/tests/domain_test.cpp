#include "starlike/domain.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "starlike/errors.hpp"
#include "starlike/gallery.hpp"
#include "support/test_support.hpp"

namespace {

using namespace starlike;
using starlike::testing::brute_distance;
using starlike::testing::kInf;
using starlike::testing::random_polynomial_domain;

BoundaryProfile parabola_profile() { return {{ProfilePiece::polynomial(-kInf, kInf, {0.0, 0.0, 1.0})}}; }

// Minimum of x² + (t − x²)² over x, by calculus: x² = t − 1/2 when t ≥ 1/2.
double parabola_distance(double t) { return t >= 0.5 ? std::sqrt(t - 0.25) : t; }

TEST(BuildDomain, ParabolaHasOneGraphArc) {
    const StarlikeDomain d = build_domain(parabola_profile());
    EXPECT_EQ(d.arcs().size(), 1u);
    EXPECT_EQ(d.report().graph_arcs, 1u);
    EXPECT_EQ(d.report().vertical_arcs, 0u);
    EXPECT_DOUBLE_EQ(d.value(3.0), 9.0);
    EXPECT_EQ(d.finite_component().first, -kInf);
    EXPECT_EQ(d.finite_component().second, kInf);
}

TEST(BuildDomain, HalfParabolaWithWallHasVerticalArc) {
    const StarlikeDomain d = build_domain({{ProfilePiece::polynomial(-kInf, 0.0, {0.0, 0.0, 1.0}),
                                            ProfilePiece::minus_infinity(0.0, kInf)}});
    EXPECT_EQ(d.report().graph_arcs, 1u);
    ASSERT_EQ(d.report().vertical_arcs, 1u);
    bool found = false;
    for (const BoundaryArc& a : d.arcs())
        if (const auto* v = std::get_if<VerticalArc>(&a)) {
            found = true;
            EXPECT_EQ(v->x, 0.0);
            EXPECT_EQ(v->y_lo, -kInf);
            EXPECT_EQ(v->y_hi, 0.0);
        }
    EXPECT_TRUE(found);
    // Junction value is the upper semicontinuous one.
    EXPECT_EQ(d.value(0.0), 0.0);
    EXPECT_EQ(d.value(1.0), -kInf);
}

TEST(BuildDomain, RejectsMalformedProfilesWithPieceIndex) {
    auto index_of = [](const BoundaryProfile& p) -> std::optional<std::size_t> {
        try {
            build_domain(p);
        } catch (const MalformedProfile& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedProfile);
            return e.piece_index();
        }
        ADD_FAILURE() << "expected MalformedProfile";
        return std::nullopt;
    };
    EXPECT_EQ(index_of({{ProfilePiece::constant(-kInf, 1.0, 0.0), ProfilePiece::constant(0.0, kInf, 1.0)}}),
              std::optional<std::size_t>(1));
    EXPECT_EQ(index_of({{ProfilePiece::constant(-kInf, 0.0, 0.0), ProfilePiece::constant(1.0, kInf, 1.0)}}),
              std::optional<std::size_t>(1));
    EXPECT_EQ(index_of({{ProfilePiece::polynomial(-kInf, kInf, std::vector<double>(10, 1.0))}}),
              std::optional<std::size_t>(0));
    EXPECT_EQ(index_of({{ProfilePiece::constant(-kInf, -1.0, 0.0), ProfilePiece::plus_infinity(-1.0, 1.0),
                         ProfilePiece::constant(1.0, kInf, 0.0)}}),
              std::optional<std::size_t>(1));
    EXPECT_EQ(index_of({{ProfilePiece::constant(0.0, kInf, 0.0)}}), std::optional<std::size_t>(0));
    EXPECT_THROW(build_domain({{ProfilePiece::plus_infinity(-kInf, kInf)}}), MalformedProfile);
    EXPECT_THROW(build_domain({{ProfilePiece::minus_infinity(-kInf, kInf)}}), MalformedProfile);
    EXPECT_THROW(build_domain({}), MalformedProfile);
    EXPECT_THROW(build_domain({{ProfilePiece::constant(-kInf, kInf, std::nan(""))}}), MalformedProfile);
}

TEST(BuildDomain, WarnsAboutOddDegreeOnUnboundedPiece) {
    const StarlikeDomain d = build_domain({{ProfilePiece::polynomial(-kInf, kInf, {0.0, 1.0, 0.0, 1.0})}});
    EXPECT_FALSE(d.report().warnings.empty());
}

TEST(Contains, ProfileMembership) {
    const StarlikeDomain o1 = omega1();
    const StarlikeDomain o2 = omega2();
    EXPECT_TRUE(contains(o1, {0.0, 1.0}));
    EXPECT_FALSE(contains(o1, {0.0, 0.0}));
    EXPECT_FALSE(contains(o2, {-1.0, 0.5}));
    EXPECT_TRUE(contains(o2, {1.0, -100.0}));
    EXPECT_FALSE(contains(o2, {0.0, -1.0}));
}

TEST(BoundaryDistance, ParabolaAtUnitHeight) {
    const StarlikeDomain o1 = omega1();
    const double d = boundary_distance(o1, {0.0, 1.0});
    EXPECT_NEAR(d, std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_NEAR(d, brute_distance(o1, {0.0, 1.0}), 1e-9);
}

TEST(BoundaryDistance, HalfPlaneAndWallDomain) {
    EXPECT_NEAR(boundary_distance(right_half_plane(), {2.0, 7.0}), 2.0, 1e-12);
    EXPECT_NEAR(boundary_distance(omega2(), {0.0, 5.0}), std::sqrt(4.75), 1e-10);
    EXPECT_THROW(boundary_distance(omega1(), {0.0, -1.0}), Error);
    try {
        boundary_distance(omega1(), {0.0, -1.0});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointOutsideDomain);
    }
}

TEST(BoundaryDistance, AgreesWithExhaustiveSamplingOnRandomProfiles) {
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> h(0.05, 20.0);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const StarlikeDomain d = random_polynomial_domain(rng);
        for (int k = 0; k < 5; ++k) {
            const double x = u(rng);
            const double v = d.value(x);
            if (v == kInf) continue;
            const cplx z(x, (std::isfinite(v) ? v : 0.0) + h(rng));
            if (!contains(d, z)) continue;
            const double got = boundary_distance(d, z);
            const double ref = brute_distance(d, z);
            EXPECT_LE(got, ref + 1e-9) << "trial " << trial;
            EXPECT_NEAR(got, ref, 1e-6) << "trial " << trial << " z=" << z;
            ++checked;
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(HalfGauges, ParabolaIsSymmetric) {
    const AxisGaugeSample g = half_gauges(omega1(), {0.0, 0.0}, 5.0);
    EXPECT_NEAR(g.delta_plus, std::sqrt(4.75), 1e-10);
    EXPECT_NEAR(g.delta_minus, std::sqrt(4.75), 1e-10);
    EXPECT_NEAR(g.omega, 2.0 * std::sqrt(4.75), 1e-10);
    ASSERT_TRUE(g.foot_plus.has_value());
    EXPECT_GE(g.foot_plus->real(), 0.0);
    ASSERT_TRUE(g.foot_minus.has_value());
    EXPECT_LE(g.foot_minus->real(), 0.0);
}

TEST(HalfGauges, WallDomainAndStrip) {
    const AxisGaugeSample g = half_gauges(omega2(), {0.0, 0.0}, 5.0);
    EXPECT_NEAR(g.delta_tilde_plus, 5.0, 1e-12);
    EXPECT_NEAR(g.delta_plus, 5.0, 1e-12);
    EXPECT_NEAR(g.delta_minus, std::sqrt(4.75), 1e-10);

    const AxisGaugeSample s = half_gauges(vertical_strip(-1.0, 1.0), {0.0, 0.0}, 10.0);
    EXPECT_NEAR(s.delta_tilde_plus, 1.0, 1e-12);
    EXPECT_NEAR(s.delta_tilde_minus, 1.0, 1e-12);
    EXPECT_NEAR(s.delta_plus, 1.0, 1e-12);
    EXPECT_NEAR(s.delta_minus, 1.0, 1e-12);
}

TEST(HalfGauges, ClampedByHeight) {
    // In the half-plane the right gauge is empty (infinite) and is clamped to t.
    const AxisGaugeSample g = half_gauges(right_half_plane(), {1.0, 0.0}, 3.0);
    EXPECT_EQ(g.delta_tilde_plus, kInf);
    EXPECT_EQ(g.delta_plus, 3.0);
    EXPECT_NEAR(g.delta_tilde_minus, 1.0, 1e-12);
}

TEST(HalfGauges, RejectsBadInput) {
    try {
        half_gauges(omega1(), {0.0, 0.0}, 0.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
    try {
        half_gauges(omega2(), {-3.0, 0.0}, 1.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointOutsideDomain);
    }
}

TEST(HalfGauges, MatchExhaustiveSamplingOfRestrictedBoundary) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const StarlikeDomain d = random_polynomial_domain(rng);
        for (double t : {0.5, 3.0, 40.0}) {
            const AxisGaugeSample g = half_gauges(d, {0.0, 0.0}, t);
            const cplx z(0.0, t);
            EXPECT_NEAR(g.delta_tilde_plus, brute_distance(d, z, Side::Plus, 0.0), 1e-6) << trial;
            EXPECT_NEAR(g.delta_tilde_minus, brute_distance(d, z, Side::Minus, 0.0), 1e-6) << trial;
            EXPECT_DOUBLE_EQ(g.clearance, std::min(g.delta_tilde_plus, g.delta_tilde_minus));
        }
    }
}

TEST(HalfGauges, MonotoneAndLipschitzAlongTheAxis) {
    std::mt19937_64 rng(5);
    std::vector<StarlikeDomain> ds{omega1(), omega2(), omega3(2).first};
    for (int i = 0; i < 10; ++i) ds.push_back(random_polynomial_domain(rng));
    for (const StarlikeDomain& d : ds) {
        AxisGaugeSample prev = half_gauges(d, {0.0, 0.0}, 0.1);
        for (double t = 0.1 * 1.1; t < 300.0; t *= 1.1) {
            const AxisGaugeSample g = half_gauges(d, {0.0, 0.0}, t);
            const double dt = t - prev.t;
            for (auto [a, b] : {std::pair{prev.delta_plus, g.delta_plus}, {prev.delta_minus, g.delta_minus}}) {
                EXPECT_GE(b, a - 1e-9);
                EXPECT_LE(b - a, dt + 1e-9);
            }
            prev = g;
        }
    }
}

TEST(HalfGauges, BasePointsGiveComparableGauges) {
    // Moving the base point by p changes each gauge by at most |p| (both are
    // 1-Lipschitz), so the ratios tend to 1 on the parabola.
    const StarlikeDomain d = omega1();
    const cplx q(1.0, 1.0);
    for (double t = 10.0; t <= 1e4; t *= 3.0) {
        const AxisGaugeSample a = half_gauges(d, {0.0, 0.0}, t);
        const AxisGaugeSample b = half_gauges(d, q, t - 1.0);
        EXPECT_LE(std::abs(a.omega - b.omega), 2.0 * std::abs(q) + 1e-9);
        EXPECT_NEAR(a.delta_plus / b.delta_plus, 1.0, 2.0 * std::abs(q) / b.delta_plus);
    }
}

TEST(Transformations, TranslationAndReflectionPreserveGauges) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const StarlikeDomain d = random_polynomial_domain(rng);
        const cplx c(1.5, -2.25);
        const StarlikeDomain moved = translate(d, c);
        const StarlikeDomain mirrored = reflect(d);
        ASSERT_TRUE(moved.anchored());
        EXPECT_EQ(*moved.anchor(), c);
        for (double t : {0.7, 6.0, 60.0}) {
            const AxisGaugeSample g = half_gauges(d, {0.0, 0.0}, t);
            const AxisGaugeSample gm = half_gauges(moved, c, t);
            const AxisGaugeSample gr = half_gauges(mirrored, {0.0, 0.0}, t);
            EXPECT_NEAR(g.delta_plus, gm.delta_plus, 1e-7);
            EXPECT_NEAR(g.delta_minus, gm.delta_minus, 1e-7);
            EXPECT_NEAR(g.delta_plus, gr.delta_minus, 1e-7);
            EXPECT_NEAR(g.delta_minus, gr.delta_plus, 1e-7);
        }
    }
}

TEST(NormalizeAnchor, IdentityAndTranslationInverse) {
    const StarlikeDomain o1 = omega1();
    const StarlikeDomain same = normalize_anchor(o1, {0.0, 0.0});
    EXPECT_EQ(same.profile(), o1.profile());
    EXPECT_EQ(*same.anchor(), cplx(0.0, 0.0));

    const StarlikeDomain back = normalize_anchor(translate(o1, {2.0, 3.0}), {2.0, 3.0});
    for (double x : {-2.0, -0.5, 0.0, 0.3, 4.0}) EXPECT_NEAR(back.value(x), x * x, 1e-12 * (1 + x * x));
    EXPECT_EQ(back.value(0.0), 0.0);
}

TEST(NormalizeAnchor, RejectsPointsThatAreNotFeet) {
    for (cplx p : {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.5)}) {
        try {
            normalize_anchor(omega2(), p);
            ADD_FAILURE() << p;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidAnchor);
        }
    }
    EXPECT_THROW(normalize_anchor(right_half_plane(), {0.0, 0.0}), Error);
}

TEST(NormalizeAnchor, RandomShiftsLandExactlyOnTheBoundary) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const StarlikeDomain d = random_polynomial_domain(rng);
        const double x = u(rng);
        const double v = d.value(x);
        if (!std::isfinite(v)) continue;
        const StarlikeDomain n = normalize_anchor(d, {x, v});
        EXPECT_EQ(n.value(0.0), 0.0);
        EXPECT_FALSE(contains(n, {0.0, 0.0}));
        EXPECT_TRUE(contains(n, {0.0, 1e-6}));
    }
}

}  // namespace
