// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "starlike/classify.hpp"
#include "starlike/gallery.hpp"
#include "starlike/metric.hpp"
#include "starlike/oracles.hpp"
#include "starlike/sigma.hpp"
#include "support/test_support.hpp"

namespace {

using namespace starlike;
using starlike::testing::brute_distance;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTimeBudget = 60.0;  // seconds per criterion

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Independent closed forms for the two model domains.
double half_plane_k(cplx a, cplx b) {
    return 0.5 * std::acosh(1.0 + std::norm(a - b) / (2.0 * a.real() * b.real()));
}
double strip_k(double width, cplx a, cplx b) {
    const cplx i(0.0, 1.0);
    return half_plane_k(std::exp(i * kPi * a / width), std::exp(i * kPi * b / width));
}

void gauge_exactness(Outcome& o) {
    double worst = 0.0;
    for (double t : {5.0, 50.0, 500.0, 5e3}) {
        const AxisGaugeSample g = half_gauges(omega2(), {0.0, 0.0}, t);
        worst = std::max({worst, rel_err(g.delta_plus, t), rel_err(g.delta_minus, std::sqrt(t - 0.25))});
    }
    o.require(worst <= 1e-6, "relative error above 1e-6");
    o.detail << "max relative error " << worst;
}

void symmetry(Outcome& o) {
    double worst = 0.0;
    for (double t : geometric_grid(1.0, 1e4, 1.05)) {
        const AxisGaugeSample g = half_gauges(omega1(), {0.0, 0.0}, t);
        worst = std::max(worst, std::abs(g.delta_plus - g.delta_minus) / t);
    }
    o.require(worst <= 1e-9, "|δ⁺ − δ⁻| > 1e-9·t");
    const SlopeVerdict v = classify_orbit(omega1(), {0.0, 0.0});
    o.require(v.kind == SlopeKind::NonTangential, "orbit verdict " + std::string(to_string(v.kind)));
    o.detail << "max |δ⁺−δ⁻|/t " << worst << ", orbit " << to_string(v.kind);
}

void nested_walls(Outcome& o) {
    const auto [d, c] = omega3(4);
    double worst_half = 0.0, worst_s = 0.0, worst_t = 0.0, worst_ref = 0.0;
    for (std::size_t k = 0; k < c.s_seq.size(); ++k) {
        const double s = c.s_seq[k], t = c.t_seq[k];
        const AxisGaugeSample gs = half_gauges(d, {0.0, 0.0}, s);
        const AxisGaugeSample gt = half_gauges(d, {0.0, 0.0}, t);
        // Exhaustive sampling of the left boundary, independent of the library search.
        worst_ref = std::max(worst_ref, rel_err(brute_distance(d, {0.0, s}, Side::Minus, 0.0), s / 2.0));
        worst_half = std::max(worst_half, rel_err(gs.delta_minus, s / 2.0));
        worst_s = std::max(worst_s, rel_err(gs.delta_plus / gs.delta_minus, 2.0));
        worst_t = std::max(worst_t, rel_err(gt.delta_plus / gt.delta_minus, t / std::sqrt(t - 0.25)));
    }
    o.require(worst_half <= 1e-6 && worst_ref <= 1e-6, "δ⁻(s_n) ≠ s_n/2");
    o.require(worst_s <= 1e-6, "ρ(s_n) ≠ 2");
    o.require(worst_t <= 1e-6, "ρ(t_n) ≠ t_n/√(t_n − 1/4)");
    const SlopeKind on_s = classify_sequence(d, {0.0, 0.0}, c.s_seq).kind;
    const SlopeKind on_t = classify_sequence(d, {0.0, 0.0}, c.t_seq).kind;
    const SlopeVerdict orbit = classify_orbit(d, {0.0, 0.0});
    o.require(on_s == SlopeKind::NonTangential, "{s_n} verdict " + std::string(to_string(on_s)));
    o.require(on_t == SlopeKind::TangentialMinus, "{t_n} verdict " + std::string(to_string(on_t)));
    o.require(orbit.kind == SlopeKind::Mixed, "orbit verdict " + std::string(to_string(orbit.kind)));
    std::size_t grid_points = 0;
    bool dominated = true;
    for (const RatioSample& r : ratio_trace(d, {0.0, 0.0}, geometric_grid(orbit.evidence.front().t, 1e9, 1.05))) {
        dominated = dominated && r.rho >= 1.0;
        ++grid_points;
    }
    o.require(dominated, "δ⁺ < δ⁻ somewhere on the grid");
    o.detail << "rel errs δ⁻(s)=" << worst_half << " (sampled " << worst_ref << "), ρ(s)=" << worst_s
             << ", ρ(t)=" << worst_t << "; verdicts " << to_string(on_s) << "/" << to_string(on_t) << "/"
             << to_string(orbit.kind) << "; δ⁺≥δ⁻ on " << grid_points << " points";
}

void distance_sandwich(Outcome& o) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> hre(0.01, 50.0), im(-50.0, 50.0), sre(-0.999, 0.999);
    const ExactModel hp_model = ExactModel::half_plane();
    const ExactModel strip_model = ExactModel::strip(2.0);
    const StarlikeDomain hp = hp_model.domain();
    const StarlikeDomain strip = strip_model.domain();
    int violations = 0, pairs = 0;
    double oracle_gap = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const bool in_strip = k % 2 == 1;
        const cplx z = in_strip ? cplx(sre(rng), im(rng)) : cplx(hre(rng), im(rng));
        const cplx w = in_strip ? cplx(sre(rng), im(rng)) : cplx(hre(rng), im(rng));
        const double exact = exact_distance(in_strip ? strip_model : hp_model, z, w);
        const double closed = in_strip ? strip_k(2.0, z, w) : half_plane_k(z, w);
        oracle_gap = std::max(oracle_gap, std::abs(exact - closed) / (1.0 + closed));
        const DistanceBound b = dist_bound(in_strip ? strip : hp, z, w);
        if (!(b.lower <= exact && exact <= b.upper)) ++violations;
        ++pairs;
    }
    o.require(violations == 0, std::to_string(violations) + " sandwich violations");
    o.require(oracle_gap <= 1e-9, "model oracle disagrees with closed form");
    o.detail << pairs << " pairs (half-plane and strip alternating), " << violations
             << " violations, oracle cross-check " << oracle_gap;
}

void clearance(Outcome& o) {
    std::vector<std::pair<std::string, StarlikeDomain>> domains{
        {"omega1", omega1()}, {"omega2", omega2()}, {"omega3", omega3(4).first}};
    std::mt19937_64 rng(42);
    for (int k = 0; k < 50; ++k)
        domains.emplace_back("random" + std::to_string(k), starlike::testing::random_polynomial_domain(rng));
    const std::vector<double> grid = geometric_grid(1.0, 1e4, 1.05);
    std::size_t checks = 0, failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [name, d] : domains) {
        const SigmaCurve sigma = build_sigma(d);
        for (double t : grid) {
            const ClearanceCheck c = clearance_check(sigma, t);
            ++checks;
            worst = std::min(worst, c.clearance - c.bound);
            if (!(c.clearance >= c.bound - 1e-9)) {
                ++failures;
                o.require(false, name + " at t=" + std::to_string(t));
            }
        }
    }
    o.detail << domains.size() << " domains, " << checks << " checks, " << failures
             << " failures, min(δ(σ) − ω/(2√2)) " << worst;
}

void length_bound(Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lg(0.0, 3.0), span(0.1, 1.0);
    std::size_t windows = 0;
    double worst = 0.0;
    for (const auto& [name, d] : std::vector<std::pair<std::string, StarlikeDomain>>{
             {"omega1", omega1()}, {"omega2", omega2()}, {"omega3", omega3(4).first}}) {
        const SigmaCurve sigma = build_sigma(d);
        const HyperbolicCurve curve = sigma.as_curve();
        for (int k = 0; k < 20; ++k) {
            // log10 a uniform in [0, 3), log10(b/a) uniform in [0.1, 1).
            const double a = std::pow(10.0, lg(rng));
            const double b = a * std::pow(10.0, span(rng));
            const double len = length_upper(d, curve, a, b);
            // Lower end of the certified bracket on ∫ dt/ω makes the check conservative.
            const double integral = omega_integral_bounds(d, a, b, 512).first;
            const double bound = 4.0 * std::sqrt(2.0) * integral * (1.0 + 1e-6);
            worst = std::max(worst, len / bound);
            o.require(len <= bound, name + " window [" + std::to_string(a) + ", " + std::to_string(b) + "]");
            ++windows;
        }
    }
    o.detail << windows << " windows, max ℓ_upper / (4√2∫dt/ω) " << worst;
}

void markers(Outcome& o) {
    const MarkerSequence m = build_markers(omega1(), 10.0, 1e6);
    const double t1 = (163.0 + std::sqrt(26026.0)) / 2.0;
    o.require(m.size() >= 2 && rel_err(m.t[1], t1) <= 1e-6, "t₁ mismatch");
    o.require(m.reached_horizon, "markers did not reach the horizon");
    const MarkerReport r = marker_invariants(omega1(), m);
    for (const InvariantViolation& v : r.violations)
        o.require(false, v.check + " at n=" + std::to_string(v.n));
    o.detail << m.size() << " markers up to " << m.t.back() << ", t₁ rel err " << rel_err(m.t[1], t1) << ", "
             << r.checks.size() << " checks / " << r.evaluations << " inequalities, " << r.violations.size()
             << " violations";
}

void certificates(Outcome& o) {
    const StarlikeDomain d = omega1();
    const HyperbolicCurve sigma = build_sigma(d).as_curve();
    const QuasiGeodesicCertificate c = certify_quasi_geodesic(d, sigma, 1.0, 1e3);
    const double replay = replay_certificate(d, sigma, c);
    o.require(c.verdict == CertificateVerdict::Certified, "σ verdict " + std::string(to_string(c.verdict)));
    o.require(std::isfinite(c.A) && std::isfinite(c.B), "non-finite constants");
    o.require(replay >= 0.0, "negative replay margin");

    const QuasiGeodesicCertificate r =
        certify_quasi_geodesic(right_half_plane(), HyperbolicCurve::vertical_ray({1.0, 0.0}), 0.0, 1e6);
    o.require(r.verdict == CertificateVerdict::RefutedUpToHorizon, "β₁ verdict " + std::string(to_string(r.verdict)));
    o.require(r.A > 1e3, "β₁ fitted A below 1e3");
    o.detail << "σ: " << to_string(c.verdict) << " A=" << c.A << " B=" << c.B << " replay margin " << replay
             << "; β₁: " << to_string(r.verdict) << " A=" << r.A;
}

void oracle_agreement(Outcome& o) {
    const std::vector<double> grid = geometric_grid(1.0, 1e3, 1.05);
    const ExactModel strip = ExactModel::strip();
    double lo = kPi, hi = -kPi;
    for (cplx z : {cplx(0.0, 0.0), cplx(0.5, 0.3), cplx(-0.4, -0.4), cplx(0.1, 0.8)})
        for (const SlopeSample& s : orbit_slope_trace(strip, z, grid)) {
            lo = std::min(lo, s.argument);
            hi = std::max(hi, s.argument);
        }
    o.require(lo >= -kPi / 2 + 0.05 && hi <= kPi / 2 - 0.05, "strip trace leaves the band");
    const SlopeKind strip_kind = classify_orbit(strip.domain(), strip.h(0.0)).kind;
    o.require(strip_kind == SlopeKind::NonTangential, "strip verdict " + std::string(to_string(strip_kind)));

    const ExactModel hp = ExactModel::half_plane();
    const std::vector<SlopeSample> trace = orbit_slope_trace(hp, 0.0, grid);
    const double last = trace.back().argument;
    o.require(std::abs(std::abs(last) - kPi / 2) <= 0.05, "half-plane trace not within 0.05 of ±π/2");
    const SlopeKind hp_kind = classify_orbit(hp.domain(), hp.h(0.0)).kind;
    const SlopeKind expected = last < 0 ? SlopeKind::TangentialMinus : SlopeKind::TangentialPlus;
    o.require(hp_kind == expected, "half-plane verdict " + std::string(to_string(hp_kind)));
    o.detail << "strip Arg range [" << lo << ", " << hi << "], verdict " << to_string(strip_kind)
             << "; half-plane Arg(1e3) " << last << ", verdict " << to_string(hp_kind);
}

void sigma_sandwich(Outcome& o) {
    std::vector<double> uppers, etas;
    for (double t : {10.0, 1e2, 1e3, 1e4, 1e5, 1e6}) {
        const SigmaDistance s = dist_to_sigma(omega2(), t);
        o.require(s.bound.upper <= s.eta_bound, "upper above the η bound at t=" + std::to_string(t));
        if (!uppers.empty()) {
            o.require(s.bound.upper > uppers.back(), "upper not increasing at t=" + std::to_string(t));
            o.require(s.eta_bound > etas.back(), "η bound not increasing at t=" + std::to_string(t));
        }
        uppers.push_back(s.bound.upper);
        etas.push_back(s.eta_bound);
    }
    double flat = 0.0;
    for (double t : {10.0, 1e3, 1e6}) {
        const SigmaDistance s = dist_to_sigma(omega1(), t);
        flat = std::max({flat, std::abs(s.bound.upper), std::abs(s.eta_bound)});
    }
    o.require(flat <= 1e-9, "Ω₁ quantities are not zero");
    o.detail << "Ω₂ upper";
    for (double u : uppers) o.detail << ' ' << u;
    o.detail << " vs η bound";
    for (double e : etas) o.detail << ' ' << e;
    o.detail << "; Ω₁ max " << flat;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"gauge exactness on the wall domain", gauge_exactness},
        {"symmetric gauges on the parabola", symmetry},
        {"nested-wall construction", nested_walls},
        {"distance sandwich in model domains", distance_sandwich},
        {"sigma clearance", clearance},
        {"sigma length bound", length_bound},
        {"marker machinery", markers},
        {"quasi-geodesic certificates", certificates},
        {"oracle and classifier agreement", oracle_agreement},
        {"distance to sigma against the eta bound", sigma_sandwich},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs <= kTimeBudget, "exceeded the time budget");
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
