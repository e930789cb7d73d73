#include "starlike/export.hpp"

#include <cmath>
#include <cstdio>

#include "starlike/domain_io.hpp"

namespace starlike {

using nlohmann::json;

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

void row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_real(v);
        first = false;
    }
    os << '\n';
}

json reals(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(real_to_json(x));
    return a;
}

json complexes(const std::vector<cplx>& zs) {
    json a = json::array();
    for (cplx z : zs) a.push_back(complex_to_json(z));
    return a;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

void write_gauge_csv(std::ostream& os, const std::vector<AxisGaugeSample>& samples) {
    os << "t,delta_tilde_plus,delta_tilde_minus,delta_plus,delta_minus,omega,rho,clearance\n";
    for (const AxisGaugeSample& g : samples)
        row(os, {g.t, g.delta_tilde_plus, g.delta_tilde_minus, g.delta_plus, g.delta_minus, g.omega,
                 g.delta_plus / g.delta_minus, g.clearance});
}

void write_sigma_csv(std::ostream& os, const std::vector<SigmaRow>& rows) {
    os << "t,re_sigma,im_sigma,delta_plus,delta_minus,omega,clearance,clearance_bound,clearance_pass\n";
    for (const SigmaRow& r : rows) {
        const cplx s = SigmaCurve::point(r.gauges);
        os << format_real(r.gauges.t) << ',' << format_real(s.real()) << ',' << format_real(s.imag()) << ','
           << format_real(r.gauges.delta_plus) << ',' << format_real(r.gauges.delta_minus) << ','
           << format_real(r.gauges.omega) << ',' << format_real(r.check.clearance) << ','
           << format_real(r.check.bound) << ',' << (r.check.pass ? 1 : 0) << '\n';
    }
}

void write_markers_csv(std::ostream& os, const MarkerSequence& m) {
    os << "n,t_n,y_n,re_z_plus,re_z_minus,omega_t_n,delta_n\n";
    for (std::size_t n = 0; n < m.size(); ++n) {
        os << n << ',';
        row(os, {m.t[n], m.y[n], m.z_plus[n].real(), m.z_minus[n].real(), m.omega_n[n], m.delta_n[n]});
    }
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioSample>& trace) {
    os << "t,rho\n";
    for (const RatioSample& s : trace) row(os, {s.t, s.rho});
}

void write_oracle_csv(std::ostream& os, const std::vector<SlopeSample>& trace) {
    os << "t,re_phi,im_phi,arg_deviation\n";
    for (const SlopeSample& s : trace) row(os, {s.t, s.phi.real(), s.phi.imag(), s.argument});
}

void write_construction_csv(std::ostream& os, const Omega3Construction& c) {
    os << "k,t_k,s_k,a_k,b_k\n";
    for (std::size_t k = 0; k < c.t_seq.size(); ++k) {
        os << (k + 1) << ',';
        row(os, {c.t_seq[k], c.s_seq[k], c.a_seq[k], c.b_seq[k]});
    }
}

json to_json(const ValidationReport& r) {
    return {{"checks", r.checks},
            {"warnings", r.warnings},
            {"graph_arcs", r.graph_arcs},
            {"vertical_arcs", r.vertical_arcs},
            {"finite_component", {real_to_json(r.finite_lo), real_to_json(r.finite_hi)}}};
}

json to_json(const QuasiGeodesicCertificate& c) {
    json pairs = json::array();
    for (const SamplePair& p : c.sample_pairs)
        pairs.push_back({{"s", real_to_json(p.s)},
                         {"t", real_to_json(p.t)},
                         {"length_upper", real_to_json(p.length_upper)},
                         {"dist_lower", real_to_json(p.dist_lower)}});
    json trace = json::array();
    for (const auto& [T, A] : c.horizon_trace) trace.push_back({real_to_json(T), real_to_json(A)});
    return {{"A", real_to_json(c.A)},
            {"B", real_to_json(c.B)},
            {"margin", real_to_json(c.margin)},
            {"verdict", to_string(c.verdict)},
            {"window", {real_to_json(c.window_lo), real_to_json(c.window_hi)}},
            {"nodes", reals(c.nodes)},
            {"segment_lengths", reals(c.segment_lengths)},
            {"A_coarse", real_to_json(c.A_coarse)},
            {"stable", c.stable},
            {"A_max", real_to_json(c.A_max)},
            {"stability_threshold", real_to_json(c.stability_threshold)},
            {"horizon_trace", trace},
            {"sample_pairs", pairs}};
}

json to_json(const SlopeVerdict& v) {
    json evidence = json::array();
    for (const RatioSample& s : v.evidence) evidence.push_back({real_to_json(s.t), real_to_json(s.rho)});
    json excursions = json::array();
    for (const Excursion& e : v.excursions)
        excursions.push_back({{"t_begin", real_to_json(e.t_begin)},
                              {"t_end", real_to_json(e.t_end)},
                              {"label", std::string(1, e.label)}});
    return {{"kind", to_string(v.kind)},
            {"horizon", real_to_json(v.horizon)},
            {"thresholds",
             {{"lambda", v.thresholds.lambda},
              {"lambda_up", v.thresholds.lambda_up},
              {"tail_fraction", v.thresholds.tail_fraction},
              {"min_alternations", v.thresholds.min_alternations}}},
            {"tail",
             {{"count", v.tail.count},
              {"min_log_rho", real_to_json(v.tail.min_log)},
              {"max_log_rho", real_to_json(v.tail.max_log)},
              {"trend", real_to_json(v.tail.trend)}}},
            {"alternations", v.alternations},
            {"excursions", excursions},
            {"evidence", evidence}};
}

json to_json(const SemigroupType& t) {
    return {{"kind", to_string(t.kind)},
            {"finite_component", {real_to_json(t.finite_lo), real_to_json(t.finite_hi)}},
            {"exact_model", t.exact_model},
            {"witness", t.witness}};
}

json to_json(const MarkerSequence& m) {
    return {{"a", real_to_json(m.a)},
            {"assumption_branch", to_string(m.assumption_branch)},
            {"horizon", real_to_json(m.horizon)},
            {"reached_horizon", m.reached_horizon},
            {"t", reals(m.t)},
            {"y", reals(m.y)},
            {"z_plus", complexes(m.z_plus)},
            {"z_minus", complexes(m.z_minus)},
            {"a_pts", complexes(m.a_pts)},
            {"b_pts", complexes(m.b_pts)},
            {"delta_n", reals(m.delta_n)},
            {"omega_t_n", reals(m.omega_n)}};
}

json to_json(const MarkerReport& r) {
    json violations = json::array();
    for (const InvariantViolation& v : r.violations)
        violations.push_back({{"n", v.n}, {"check", v.check}, {"lhs", real_to_json(v.lhs)}, {"rhs", real_to_json(v.rhs)}});
    return {{"checks", r.checks}, {"evaluations", r.evaluations}, {"ok", r.ok()}, {"violations", violations}};
}

json to_json(const DistanceBound& b) {
    json path = json::array();
    for (cplx z : b.upper_path) path.push_back(complex_to_json(z));
    return {{"lower", real_to_json(b.lower)},
            {"upper", real_to_json(b.upper)},
            {"lower_source", to_string(b.lower_source)},
            {"lower_witness", b.lower_witness ? complex_to_json(*b.lower_witness) : json(nullptr)},
            {"upper_path", path}};
}

json to_json(const EasyCaseResult& r) {
    return {{"holds", r.holds},
            {"alpha", real_to_json(r.alpha)},
            {"T0", real_to_json(r.T0)},
            {"tail_slope", real_to_json(r.tail_slope)},
            {"horizon", real_to_json(r.horizon)},
            {"heuristic", true}};
}

}  // namespace starlike
