#include "starlike/oracles.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "starlike/classify.hpp"
#include "starlike/errors.hpp"

namespace {

using namespace starlike;

constexpr double kPi = 3.14159265358979323846;

// Möbius-invariant disc distance and the explicit strip Koenigs map, written
// out directly.
double disc_k(cplx z, cplx w) { return std::atanh(std::abs(z - w) / std::abs(1.0 - std::conj(z) * w)); }
cplx strip_h(double width, cplx z) { return cplx(0.0, width / kPi) * std::log((1.0 + z) / (1.0 - z)); }

TEST(ExactDistance, NormalizationChecks) {
    EXPECT_NEAR(exact_distance(ExactModel::disc(), 0.0, 0.5), std::atanh(0.5), 1e-15);
    EXPECT_NEAR(exact_distance(ExactModel::disc(), 0.0, 0.5), 0.5493, 1e-4);
    EXPECT_NEAR(exact_distance(ExactModel::half_plane(), 1.0, 4.0), 0.5 * std::log(4.0), 1e-14);
    EXPECT_NEAR(0.5 * std::acosh(1.0 + 9.0 / 8.0), 0.5 * std::log(4.0), 1e-14);
    EXPECT_THROW(exact_distance(ExactModel::half_plane(), -1.0, 4.0), Error);
}

TEST(ExactDistance, PullbackThroughKoenigsMaps) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> r(0.0, 0.95), a(-kPi, kPi);
    for (const ExactModel& m : {ExactModel::strip(), ExactModel::strip(2.0), ExactModel::half_plane()}) {
        for (int k = 0; k < 200; ++k) {
            const cplx z = std::polar(r(rng), a(rng)), w = std::polar(r(rng), a(rng));
            const double ref = disc_k(z, w);
            EXPECT_NEAR(exact_distance(m, m.h(z), m.h(w)), ref, 1e-9 * (1.0 + ref));
        }
    }
}

TEST(ExactDistance, StripStaysFiniteForFarApartPoints) {
    // On the axis of the width-π strip the distance is half the height difference.
    const ExactModel strip = ExactModel::strip();
    EXPECT_NEAR(exact_distance(strip, 0.0, cplx(0.0, -1000.0)), 500.0, 1e-9);
    EXPECT_NEAR(exact_distance(strip, cplx(0.0, -40.0), cplx(0.0, -41.0)), 0.5, 1e-12);
    const ExactModel narrow = ExactModel::strip(2.0);
    for (auto [z, w] : {std::pair{cplx(0.38, -24.4), cplx(0.85, -20.9)}, {cplx(-0.85, -0.1), cplx(-0.83, -25.8)}}) {
        const cplx i(0.0, 1.0);
        const cplx a = std::exp(i * kPi * z / 2.0), b = std::exp(i * kPi * w / 2.0);
        const double ref = 0.5 * std::acosh(1.0 + std::norm(a - b) / (2.0 * a.real() * b.real()));
        EXPECT_NEAR(exact_distance(narrow, z, w), ref, 1e-9 * ref);
    }
}

TEST(KoenigsMap, MatchesExplicitFormulasAndInverts) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> r(0.0, 0.9), a(-kPi, kPi);
    const ExactModel strip = ExactModel::strip(2.0);
    const ExactModel hp = ExactModel::half_plane();
    for (int k = 0; k < 200; ++k) {
        const cplx z = std::polar(r(rng), a(rng));
        EXPECT_NEAR(std::abs(strip.h(z) - strip_h(2.0, z)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(hp.h(z) - (1.0 + z) / (1.0 - z)), 0.0, 1e-12);
        EXPECT_TRUE(strip.in_model(strip.h(z)));
        EXPECT_TRUE(hp.in_model(hp.h(z)));
        EXPECT_NEAR(std::abs(strip.h_inv(strip.h(z)).z - z), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(hp.h_inv(hp.h(z)).z - z), 0.0, 1e-12);
    }
}

TEST(KoenigsMap, FlowIsASemigroupConjugatedToTranslation) {
    for (const ExactModel& m : {ExactModel::strip(), ExactModel::half_plane()}) {
        for (cplx z : {cplx(0.0, 0.0), cplx(0.3, -0.4), cplx(-0.5, 0.2)}) {
            for (auto [s, t] : {std::pair{0.5, 1.5}, {3.0, 10.0}, {20.0, 50.0}}) {
                const DiscPoint once = m.flow(z, s + t);
                const DiscPoint twice = m.flow(m.flow(z, s), t);
                EXPECT_NEAR(std::abs(once.z - twice.z), 0.0, 1e-12);
                EXPECT_NEAR(std::abs(once.log_one_minus - twice.log_one_minus), 0.0, 1e-9);
                const cplx shifted = m.h(z) + cplx(0.0, s);
                EXPECT_NEAR(std::abs(m.h(m.flow(z, s)) - shifted), 0.0, 1e-9 * (1.0 + std::abs(shifted)));
            }
            EXPECT_NEAR(std::abs(m.flow(z, 0.0).z - z), 0.0, 1e-12);
        }
    }
    EXPECT_THROW(ExactModel::disc().flow(0.0, 1.0), Error);
}

TEST(KoenigsMap, OrbitsApproachTheDenjoyWolffPoint) {
    const ExactModel strip = ExactModel::strip();
    const DiscPoint far = strip.flow(cplx(0.2, 0.1), 500.0);
    EXPECT_NEAR(std::abs(far.z - strip.tau()), 0.0, 1e-12);
    // The complement 1 − φ stays resolved far below double epsilon.
    EXPECT_LT(far.log_one_minus.real(), -100.0);
    EXPECT_NEAR(disc_distance(far, strip.flow(cplx(0.2, 0.1), 501.0)),
                exact_distance(strip, strip.h(cplx(0.2, 0.1)) + cplx(0.0, 500.0),
                               strip.h(cplx(0.2, 0.1)) + cplx(0.0, 501.0)),
                1e-9);
}

TEST(SlopeTrace, StripConvergesNonTangentially) {
    const ExactModel strip = ExactModel::strip();
    const std::vector<double> grid = geometric_grid(1.0, 1e3, 1.1);
    for (cplx z : {cplx(0.0, 0.0), cplx(0.4, 0.5), cplx(-0.3, -0.6)}) {
        // 1 − φ_t(z) ≈ 2·exp(iπh(z)/width), so the argument tends to π·Re h(z)/width.
        const double limit = strip_h(kPi, z).real();
        const std::vector<SlopeSample> trace = orbit_slope_trace(strip, z, grid);
        for (const SlopeSample& s : trace) {
            EXPECT_GE(s.argument, -kPi / 2 + 0.05);
            EXPECT_LE(s.argument, kPi / 2 - 0.05);
        }
        EXPECT_NEAR(trace.back().argument, limit, 1e-9);
    }
    for (const SlopeSample& s : orbit_slope_trace(strip, 0.0, grid)) EXPECT_NEAR(s.argument, 0.0, 1e-12);
}

TEST(SlopeTrace, HalfPlaneConvergesTangentially) {
    // φ_t(0) = h⁻¹(1 + it) gives 1 − φ_t(0) = 2/(2 + it), argument −atan(t/2).
    const std::vector<double> grid = geometric_grid(1.0, 1e3, 1.1);
    const std::vector<SlopeSample> trace = orbit_slope_trace(ExactModel::half_plane(), 0.0, grid);
    for (const SlopeSample& s : trace) EXPECT_NEAR(s.argument, -std::atan(s.t / 2.0), 1e-12);
    EXPECT_LT(std::abs(trace.back().argument + kPi / 2), 0.05);
}

TEST(SlopeTrace, RejectsPointsOutsideTheDisc) {
    EXPECT_THROW(orbit_slope_trace(ExactModel::strip(), 1.5, {1.0}), Error);
}

}  // namespace
