#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "starlike/classify.hpp"
#include "starlike/domain_io.hpp"
#include "starlike/errors.hpp"
#include "starlike/export.hpp"
#include "starlike/gallery.hpp"
#include "starlike/metric.hpp"
#include "starlike/oracles.hpp"
#include "starlike/sigma.hpp"

namespace starlike::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::string domain_file;
    std::string gallery;
    int depth = 4;
    std::string p = "0,0";
    std::string grid = "1:1e4:1.05";
    double horizon = 1e6;
    double ratio = 1.05;
    std::optional<double> start;
    double lambda = std::log(10.0);
    double lambda_up = std::log(10.0);
    double tail = 0.5;
    int min_alternations = 3;
    std::string sequence;
    std::string curve = "sigma";
    std::string window = "1:1000";
    int pairs = 300;
    double a_max = 1e3;
    std::string model = "strip";
    double width = std::numbers::pi;
    std::string z = "0,0";
    std::string out;
    std::string format;
    std::string report;
    std::string table;
};

Error bad(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw bad("not a number: '" + s + "'");
    }
    if (used != s.size()) throw bad("not a number: '" + s + "'");
    return v;
}

std::vector<double> split_reals(const std::string& s, char sep) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(parse_real(item));
    return out;
}

cplx parse_complex(const std::string& s) {
    const auto v = split_reals(s, ',');
    if (v.size() != 2) throw bad("expected a point as 're,im', got '" + s + "'");
    return {v[0], v[1]};
}

struct GridSpec {
    double lo, hi, ratio;
};

GridSpec parse_grid(const std::string& s) {
    const auto v = split_reals(s, ':');
    if (v.size() != 3) throw bad("expected a grid as 'lo:hi:ratio', got '" + s + "'");
    if (!(v[0] > 0.0) || !(v[1] > v[0]) || !(v[2] > 1.0))
        throw bad("grid needs 0 < lo < hi and ratio > 1, got '" + s + "'");
    return {v[0], v[1], v[2]};
}

StarlikeDomain load_domain(const RunConfig& c) {
    if (!c.domain_file.empty() && !c.gallery.empty()) throw bad("give either --domain or --gallery, not both");
    if (!c.domain_file.empty()) return load_domain_file(c.domain_file);
    if (!c.gallery.empty()) return gallery_domain(c.gallery, c.depth);
    throw bad("a domain is required: --domain FILE or --gallery NAME");
}

// Resolves where an artifact goes: --out, the environment default, or stdout.
class Sink {
public:
    Sink(const RunConfig& c, const std::string& ext, std::ostream& fallback) : stream_(&fallback) {
        std::string path = c.out;
        if (path.empty()) {
            if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0')
                path = std::string(dir) + "/" + c.command + "." + ext;
        }
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw bad("cannot write output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& os() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void write_json_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw bad("cannot write output file '" + path + "'");
    f << j.dump(2) << '\n';
}

std::string format_or(const RunConfig& c, const std::string& fallback) {
    const std::string f = c.format.empty() ? fallback : c.format;
    if (f != "csv" && f != "json") throw bad("--format must be csv or json");
    return f;
}

std::vector<AxisGaugeSample> gauge_samples(const StarlikeDomain& d, cplx p, const GridSpec& g) {
    std::vector<AxisGaugeSample> out;
    for (double t : geometric_grid(g.lo, g.hi, g.ratio)) out.push_back(half_gauges(d, p, t));
    return out;
}

json gauge_json(const std::vector<AxisGaugeSample>& samples) {
    json a = json::array();
    for (const AxisGaugeSample& g : samples)
        a.push_back({{"t", real_to_json(g.t)},
                     {"delta_tilde_plus", real_to_json(g.delta_tilde_plus)},
                     {"delta_tilde_minus", real_to_json(g.delta_tilde_minus)},
                     {"delta_plus", real_to_json(g.delta_plus)},
                     {"delta_minus", real_to_json(g.delta_minus)},
                     {"omega", real_to_json(g.omega)},
                     {"rho", real_to_json(g.delta_plus / g.delta_minus)},
                     {"clearance", real_to_json(g.clearance)}});
    return a;
}

int cmd_describe(const RunConfig& c, std::ostream& out) {
    const StarlikeDomain d = load_domain(c);
    json j = {{"validation", to_json(d.report())},
              {"semigroup_type", to_json(semigroup_type(d))},
              {"anchored", d.anchored()},
              {"domain", domain_to_json(d)}};
    if (d.anchored()) j["anchor"] = complex_to_json(*d.anchor());
    Sink sink(c, "json", out);
    sink.os() << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_gauge(const RunConfig& c, std::ostream& out) {
    const StarlikeDomain d = load_domain(c);
    const auto samples = gauge_samples(d, parse_complex(c.p), parse_grid(c.grid));
    const std::string f = format_or(c, "csv");
    Sink sink(c, f, out);
    if (f == "csv")
        write_gauge_csv(sink.os(), samples);
    else
        sink.os() << gauge_json(samples).dump(2) << '\n';
    return kExitOk;
}

int cmd_sigma(const RunConfig& c, std::ostream& out) {
    const SigmaCurve sigma(load_domain(c));
    const GridSpec g = parse_grid(c.grid);
    if (g.lo < 1.0) throw bad("sigma is defined for t >= 1");
    std::vector<SigmaRow> rows;
    std::size_t failures = 0;
    for (double t : geometric_grid(g.lo, g.hi, g.ratio)) {
        rows.push_back({sigma.gauges(t), clearance_check(sigma, t)});
        failures += rows.back().check.pass ? 0 : 1;
    }
    const std::string f = format_or(c, "csv");
    Sink sink(c, f, out);
    if (f == "csv") {
        write_sigma_csv(sink.os(), rows);
    } else {
        json a = json::array();
        for (const SigmaRow& r : rows) {
            const cplx s = SigmaCurve::point(r.gauges);
            a.push_back({{"t", real_to_json(r.gauges.t)},
                         {"sigma", complex_to_json(s)},
                         {"omega", real_to_json(r.gauges.omega)},
                         {"clearance", real_to_json(r.check.clearance)},
                         {"clearance_bound", real_to_json(r.check.bound)},
                         {"pass", r.check.pass}});
        }
        sink.os() << json{{"trace", a}, {"clearance_failures", failures}}.dump(2) << '\n';
    }
    return failures == 0 ? kExitOk : kExitNumeric;
}

int cmd_markers(const RunConfig& c, std::ostream& out) {
    const StarlikeDomain d = load_domain(c);
    const MarkerSequence m = build_markers(d, c.start, c.horizon);
    const MarkerReport report = marker_invariants(d, m);
    const std::string f = format_or(c, "csv");
    Sink sink(c, f, out);
    if (f == "csv")
        write_markers_csv(sink.os(), m);
    else
        sink.os() << json{{"markers", to_json(m)}, {"report", to_json(report)}}.dump(2) << '\n';
    if (!c.report.empty()) write_json_file(c.report, to_json(report));
    return report.ok() ? kExitOk : kExitNumeric;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
    const StarlikeDomain d = load_domain(c);
    ClassifyOptions opt;
    opt.lambda = c.lambda;
    opt.lambda_up = c.lambda_up;
    opt.tail_fraction = c.tail;
    opt.min_alternations = c.min_alternations;
    const cplx p = parse_complex(c.p);
    if (!(c.horizon > 1.0)) throw bad("--horizon must exceed the grid start 1");
    const SlopeVerdict v = c.sequence.empty() ? classify_orbit(d, p, c.horizon, c.ratio, opt)
                                              : classify_sequence(d, p, split_reals(c.sequence, ','), opt);
    const std::string f = format_or(c, "json");
    Sink sink(c, f, out);
    if (f == "csv") {
        write_ratio_csv(sink.os(), v.evidence);
    } else {
        json j = to_json(v);
        j["semigroup_type"] = to_json(semigroup_type(d));
        sink.os() << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
    const StarlikeDomain d = load_domain(c);
    const auto w = split_reals(c.window, ':');
    if (w.size() != 2 || !(w[0] < w[1])) throw bad("--window must be 'a:T' with a < T");
    HyperbolicCurve curve;
    if (c.curve == "sigma")
        curve = SigmaCurve(d).as_curve();
    else if (c.curve == "vertical")
        curve = HyperbolicCurve::vertical_ray(parse_complex(c.p));
    else
        throw bad("--curve must be sigma or vertical");
    CertifyOptions opt;
    opt.A_max = c.a_max;
    const QuasiGeodesicCertificate cert = certify_quasi_geodesic(d, curve, w[0], w[1], c.pairs, opt);
    json j = to_json(cert);
    j["curve"] = c.curve;
    if (c.curve == "vertical") j["base_point"] = complex_to_json(parse_complex(c.p));
    j["domain"] = domain_to_json(d);
    Sink sink(c, "json", out);
    sink.os() << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
    ExactModel model = c.model == "strip"        ? ExactModel::strip(c.width)
                       : c.model == "half-plane" ? ExactModel::half_plane()
                                                 : throw bad("--model must be strip or half-plane");
    const GridSpec g = parse_grid(c.grid);
    const auto trace = orbit_slope_trace(model, parse_complex(c.z), geometric_grid(g.lo, g.hi, g.ratio));
    const std::string f = format_or(c, "csv");
    Sink sink(c, f, out);
    if (f == "csv") {
        write_oracle_csv(sink.os(), trace);
    } else {
        json a = json::array();
        for (const SlopeSample& s : trace)
            a.push_back({{"t", real_to_json(s.t)}, {"phi", complex_to_json(s.phi)}, {"arg", real_to_json(s.argument)}});
        sink.os() << a.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_gallery(const RunConfig& c, std::ostream& out) {
    if (c.gallery.empty()) throw bad("gallery needs --gallery NAME");
    const std::string f = format_or(c, "json");
    std::optional<Omega3Construction> construction;
    StarlikeDomain d = c.gallery == "omega3" ? [&] {
        auto [dom, con] = omega3(c.depth);
        construction = std::move(con);
        return dom;
    }()
                                             : gallery_domain(c.gallery, c.depth);
    if (!c.table.empty()) {
        if (!construction) throw bad("--table is only available for omega3");
        std::ofstream t(c.table);
        if (!t) throw bad("cannot write output file '" + c.table + "'");
        write_construction_csv(t, *construction);
    }
    Sink sink(c, f, out);
    if (f == "csv") {
        if (!construction) throw bad("csv output is the construction table, available for omega3 only");
        write_construction_csv(sink.os(), *construction);
    } else {
        sink.os() << domain_to_json(d).dump(2) << '\n';
    }
    return kExitOk;
}

void add_domain_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--domain", c.domain_file, "domain specification file (JSON)");
    sub->add_option("--gallery", c.gallery, "gallery domain: omega1, omega2, omega3, strip, unit-strip, half-plane");
    sub->add_option("--depth", c.depth, "omega3 construction depth")->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--out", c.out, "output file (default: $" + std::string(kOutDirEnv) + "/<command>.<ext> or stdout)");
    sub->add_option("--format", c.format, "csv or json");
}

// Appends --key value pairs from a JSON config for keys absent on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw bad("--config needs a file");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    std::ifstream f(path);
    if (!f) throw bad("cannot open config file '" + path + "'");
    json cfg;
    try {
        f >> cfg;
    } catch (const json::exception& e) {
        throw bad(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw bad("config file must hold a JSON object");
    const bool has_command = !args.empty() && args.front().rfind("--", 0) != 0;
    if (!has_command) {
        if (!cfg.contains("command") || !cfg["command"].is_string()) throw bad("no command given");
        args.insert(args.begin(), cfg["command"].get<std::string>());
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") continue;
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        args.push_back(flag);
        if (value.is_string()) {
            args.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
            args.push_back(buf);
        } else {
            throw bad("config value for '" + key + "' must be a string or a number");
        }
    }
    return args;
}

void report_error(std::ostream& err, const std::string& code, const std::string& message, int status,
                  const json& extra = json::object()) {
    json j = {{"error", code}, {"message", message}, {"exit_code", status}};
    for (const auto& [k, v] : extra.items()) j[k] = v;
    err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Boundary-gauge, quasi-geodesic and slope analysis for domains starlike at infinity", "starlike-cli"};
    app.require_subcommand(1);

    auto* describe = app.add_subcommand("describe", "domain validation report");
    add_domain_options(describe, c);
    add_output_options(describe, c);

    auto* gauge = app.add_subcommand("gauge", "gauge trace: t, half gauges, omega, rho, clearance");
    add_domain_options(gauge, c);
    add_output_options(gauge, c);
    gauge->add_option("--p", c.p, "base point 're,im'");
    gauge->add_option("--grid", c.grid, "geometric grid 'lo:hi:ratio'");

    auto* sigma = app.add_subcommand("sigma", "sigma trace with clearance checks");
    add_domain_options(sigma, c);
    add_output_options(sigma, c);
    sigma->add_option("--grid", c.grid, "geometric grid 'lo:hi:ratio' (lo >= 1)");

    auto* markers = app.add_subcommand("markers", "marker sequence and invariant report");
    add_domain_options(markers, c);
    add_output_options(markers, c);
    markers->add_option("--start", c.start, "start height a (default: first height with omega < t, plus 1)");
    markers->add_option("--horizon", c.horizon, "largest marker height");
    markers->add_option("--report", c.report, "write the invariant report JSON here");

    auto* classify = app.add_subcommand("classify", "slope verdict from the gauge ratio");
    add_domain_options(classify, c);
    add_output_options(classify, c);
    classify->add_option("--p", c.p, "base point 're,im'");
    classify->add_option("--horizon", c.horizon, "orbit grid horizon");
    classify->add_option("--ratio", c.ratio, "orbit grid ratio")->check(CLI::Range(1.0000001, 1e6));
    classify->add_option("--lambda", c.lambda, "bounded threshold on |log rho|")->check(CLI::PositiveNumber);
    classify->add_option("--lambda-up", c.lambda_up, "divergence threshold on |log rho|")->check(CLI::PositiveNumber);
    classify->add_option("--tail", c.tail, "tail fraction")->check(CLI::Range(1e-9, 1.0));
    classify->add_option("--min-alternations", c.min_alternations, "alternations required for Mixed");
    classify->add_option("--sequence", c.sequence, "comma-separated heights (classify this sequence instead)");

    auto* certify = app.add_subcommand("certify-qg", "quasi-geodesic certificate");
    add_domain_options(certify, c);
    add_output_options(certify, c);
    certify->add_option("--curve", c.curve, "sigma or vertical");
    certify->add_option("--p", c.p, "base point of the vertical ray 're,im'");
    certify->add_option("--window", c.window, "parameter window 'a:T'");
    certify->add_option("--pairs", c.pairs, "pair budget")->check(CLI::PositiveNumber);
    certify->add_option("--A-max", c.a_max, "refutation threshold for A")->check(CLI::PositiveNumber);

    auto* oracle = app.add_subcommand("oracle", "closed-form model orbit trace");
    add_output_options(oracle, c);
    oracle->add_option("--model", c.model, "strip or half-plane");
    oracle->add_option("--width", c.width, "strip width")->check(CLI::PositiveNumber);
    oracle->add_option("--z", c.z, "disc starting point 're,im'");
    oracle->add_option("--grid", c.grid, "geometric t grid 'lo:hi:ratio'");

    auto* gallery = app.add_subcommand("gallery", "emit a gallery domain spec and construction table");
    add_domain_options(gallery, c);
    add_output_options(gallery, c);
    gallery->add_option("--table", c.table, "write the omega3 construction table CSV here");

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "InvalidArgument", e.what(), kExitValidation);
        return kExitValidation;
    } catch (const Error& e) {
        report_error(err, to_string(e.code()), e.what(), kExitValidation);
        return kExitValidation;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        c.command = sub->get_name();
        if (sub == describe) return cmd_describe(c, out);
        if (sub == gauge) return cmd_gauge(c, out);
        if (sub == sigma) return cmd_sigma(c, out);
        if (sub == markers) return cmd_markers(c, out);
        if (sub == classify) return cmd_classify(c, out);
        if (sub == certify) return cmd_certify(c, out);
        if (sub == oracle) return cmd_oracle(c, out);
        return cmd_gallery(c, out);
    } catch (const MalformedProfile& e) {
        json extra = json::object();
        if (e.piece_index()) extra["piece_index"] = *e.piece_index();
        report_error(err, to_string(e.code()), e.what(), kExitValidation, extra);
        return kExitValidation;
    } catch (const ConstructionOverflow& e) {
        report_error(err, to_string(e.code()), e.what(), kExitNumeric, {{"achieved_depth", e.achieved_depth()}});
        return kExitNumeric;
    } catch (const Error& e) {
        const int status = is_validation_error(e.code()) ? kExitValidation : kExitNumeric;
        report_error(err, to_string(e.code()), e.what(), status);
        return status;
    } catch (const std::exception& e) {
        report_error(err, "NumericFailure", e.what(), kExitNumeric);
        return kExitNumeric;
    }
}

}  // namespace starlike::cli
