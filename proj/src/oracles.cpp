#include "starlike/oracles.hpp"

#include <cmath>
#include <numbers>

#include "starlike/errors.hpp"
#include "starlike/gallery.hpp"

namespace starlike {

namespace {

// Above this imaginary part the strip inverse switches to the e^{iu} form,
// since |e^{−iu}| = e^{Im u} would leave the double exponent range.
constexpr double kAsymptoticSwitch = 30.0;

const cplx I(0.0, 1.0);

}  // namespace

DiscPoint DiscPoint::from(cplx z) { return {z, std::log(1.0 - z)}; }

ExactModel ExactModel::strip(double width) {
    if (!(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip width must be positive");
    return ExactModel(ModelKind::VerticalStrip, width);
}

ExactModel ExactModel::half_plane() { return ExactModel(ModelKind::RightHalfPlane, 0.0); }

ExactModel ExactModel::disc() { return ExactModel(ModelKind::UnitDisc, 0.0); }

bool ExactModel::in_model(cplx w) const noexcept {
    switch (kind_) {
        case ModelKind::VerticalStrip: return std::abs(w.real()) < 0.5 * width_;
        case ModelKind::RightHalfPlane: return w.real() > 0.0;
        case ModelKind::UnitDisc: return std::abs(w) < 1.0;
    }
    return false;
}

cplx ExactModel::h(cplx z) const { return h(DiscPoint::from(z)); }

cplx ExactModel::h(const DiscPoint& p) const {
    const cplx c = std::exp(p.log_one_minus);  // 1 − z
    switch (kind_) {
        case ModelKind::VerticalStrip: {
            const double k = std::numbers::pi / width_;
            const cplx log_one_plus = std::abs(1.0 + p.z) < 0.5 ? std::log(1.0 + p.z) : std::log(2.0 - c);
            return I * (log_one_plus - p.log_one_minus) / k;
        }
        case ModelKind::RightHalfPlane: return (2.0 - c) / c;
        case ModelKind::UnitDisc: return p.z;
    }
    return p.z;
}

DiscPoint ExactModel::h_inv(cplx w) const {
    switch (kind_) {
        case ModelKind::VerticalStrip: {
            const cplx u = w * (std::numbers::pi / width_);
            if (u.imag() > kAsymptoticSwitch) {
                const cplx e = std::exp(I * u);  // tiny
                return {(1.0 - e) / (1.0 + e), std::log(2.0) + I * u - std::log(1.0 + e)};
            }
            const cplx e = std::exp(-I * u);
            return {(e - 1.0) / (e + 1.0), std::log(2.0) - std::log(e + 1.0)};
        }
        case ModelKind::RightHalfPlane: return {(w - 1.0) / (w + 1.0), std::log(2.0) - std::log(w + 1.0)};
        case ModelKind::UnitDisc: return DiscPoint::from(w);
    }
    return DiscPoint::from(w);
}

DiscPoint ExactModel::flow(cplx z, double t) const { return flow(DiscPoint::from(z), t); }

DiscPoint ExactModel::flow(const DiscPoint& z, double t) const {
    if (kind_ == ModelKind::UnitDisc)
        throw Error(ErrorCode::InvalidArgument, "the disc model carries no semigroup");
    return h_inv(h(z) + I * t);
}

StarlikeDomain ExactModel::domain() const {
    switch (kind_) {
        case ModelKind::VerticalStrip: return vertical_strip(-0.5 * width_, 0.5 * width_);
        case ModelKind::RightHalfPlane: return right_half_plane();
        case ModelKind::UnitDisc: break;
    }
    throw Error(ErrorCode::InvalidArgument, "the disc is not a domain starlike at infinity");
}

double disc_distance(const DiscPoint& a, const DiscPoint& b) {
    const cplx c1 = std::exp(a.log_one_minus);
    const cplx c2 = std::exp(b.log_one_minus);
    const double num = std::abs(c2 - c1);                             // |z − w|
    const double den = std::abs(std::conj(c1) + c2 - std::conj(c1) * c2);  // |1 − z̄w|
    // 1 − |z|² = 2 Re c − |c|², accurate when z approaches 1.
    const double g1 = 2.0 * c1.real() - std::norm(c1);
    const double g2 = 2.0 * c2.real() - std::norm(c2);
    if (num == 0.0) return 0.0;
    // atanh(num/den) = log((den + num)/sqrt((1 − |z|²)(1 − |w|²)))
    return std::log(den + num) - 0.5 * (std::log(g1) + std::log(g2));
}

double half_plane_distance(cplx z, cplx w) {
    const double x = std::norm(z - w) / (2.0 * z.real() * w.real());
    return 0.5 * std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double strip_distance(double width, cplx z, cplx w) {
    // z ↦ exp(iπz/width) maps the strip onto the right half-plane. Both images
    // are rescaled by the same factor to keep the moduli near one, and sinh k is
    // assembled in log form so far-apart points do not overflow.
    const double a = std::numbers::pi * z.real() / width, b = std::numbers::pi * w.real() / width;
    const double m = 0.5 * std::abs(std::numbers::pi * (w.imag() - z.imag()) / width);
    const cplx near = std::polar(1.0, z.imag() >= w.imag() ? b : a);
    const cplx far = std::polar(std::exp(-2.0 * m), z.imag() >= w.imag() ? a : b);
    const double gap = std::abs(near - far);
    if (gap == 0.0) return 0.0;
    const double log_sinh = m + std::log(gap) - std::log(2.0) - 0.5 * (std::log(std::cos(a)) + std::log(std::cos(b)));
    return log_sinh > 20.0 ? log_sinh + std::log(2.0) : std::asinh(std::exp(log_sinh));
}

double exact_distance(const ExactModel& model, cplx z, cplx w) {
    if (!model.in_model(z) || !model.in_model(w))
        throw Error(ErrorCode::PointOutsideDomain, "point outside the model domain");
    switch (model.kind()) {
        case ModelKind::UnitDisc: return disc_distance(DiscPoint::from(z), DiscPoint::from(w));
        case ModelKind::RightHalfPlane: return half_plane_distance(z, w);
        case ModelKind::VerticalStrip: return strip_distance(model.width(), z, w);
    }
    return 0.0;
}

std::vector<SlopeSample> orbit_slope_trace(const ExactModel& model, cplx z, const std::vector<double>& grid) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::PointOutsideDomain, "orbit start must lie in the disc");
    const DiscPoint start = DiscPoint::from(z);
    std::vector<SlopeSample> out;
    out.reserve(grid.size());
    for (double t : grid) {
        const DiscPoint p = model.flow(start, t);
        // τ = 1, so Arg(1 − τ̄φ) is the imaginary part of log(1 − φ).
        out.push_back({t, p.z, p.log_one_minus.imag()});
    }
    return out;
}

}  // namespace starlike
