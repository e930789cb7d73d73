#include "starlike/domain_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "starlike/errors.hpp"

namespace starlike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PieceKind kind_from_string(const std::string& s, std::size_t index) {
    if (s == "poly") return PieceKind::Polynomial;
    if (s == "const") return PieceKind::Constant;
    if (s == "minus_inf") return PieceKind::MinusInfinity;
    if (s == "plus_inf") return PieceKind::PlusInfinity;
    throw MalformedProfile("piece " + std::to_string(index) + " has unknown kind '" + s + "'", index);
}

}  // namespace

nlohmann::json real_to_json(double x) {
    if (x == kInf) return "+inf";
    if (x == -kInf) return "-inf";
    return x;
}

double real_from_json(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+inf" || s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw MalformedProfile("expected a number or \"-inf\"/\"+inf\", got " + j.dump());
}

StarlikeDomain domain_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw MalformedProfile("domain specification must be a JSON object");
    if (!spec.contains("version")) throw MalformedProfile("domain specification lacks the mandatory version field");
    if (!spec["version"].is_number_integer() || spec["version"].get<int>() != kDomainSpecVersion)
        throw MalformedProfile("unsupported domain specification version " + spec["version"].dump());
    if (!spec.contains("pieces") || !spec["pieces"].is_array())
        throw MalformedProfile("domain specification lacks a pieces array");

    BoundaryProfile profile;
    std::size_t index = 0;
    for (const auto& jp : spec["pieces"]) {
        if (!jp.is_object() || !jp.contains("interval") || !jp["interval"].is_array() || jp["interval"].size() != 2 ||
            !jp.contains("kind") || !jp["kind"].is_string())
            throw MalformedProfile("piece " + std::to_string(index) + " needs an interval pair and a kind", index);
        ProfilePiece p;
        p.lo = real_from_json(jp["interval"][0]);
        p.hi = real_from_json(jp["interval"][1]);
        p.kind = kind_from_string(jp["kind"].get<std::string>(), index);
        if (p.kind == PieceKind::Polynomial) {
            if (!jp.contains("coeffs") || !jp["coeffs"].is_array())
                throw MalformedProfile("polynomial piece " + std::to_string(index) + " needs coeffs", index);
            for (const auto& c : jp["coeffs"]) {
                if (!c.is_number())
                    throw MalformedProfile("piece " + std::to_string(index) + " has a non-numeric coefficient", index);
                p.coeffs.push_back(c.get<double>());
            }
        } else if (p.kind == PieceKind::Constant) {
            if (jp.contains("level") && jp["level"].is_number()) {
                p.level = jp["level"].get<double>();
            } else if (jp.contains("coeffs") && jp["coeffs"].is_array() && jp["coeffs"].size() == 1 &&
                       jp["coeffs"][0].is_number()) {
                p.level = jp["coeffs"][0].get<double>();
            } else {
                throw MalformedProfile("constant piece " + std::to_string(index) + " needs a level", index);
            }
        }
        profile.pieces.push_back(std::move(p));
        ++index;
    }
    StarlikeDomain domain = build_domain(profile);
    if (spec.contains("anchor") && !spec["anchor"].is_null()) {
        const auto& ja = spec["anchor"];
        if (!ja.is_array() || ja.size() != 2 || !ja[0].is_number() || !ja[1].is_number())
            throw MalformedProfile("anchor must be a [re, im] pair");
        const cplx a(ja[0].get<double>(), ja[1].get<double>());
        if (a == cplx(0.0, 0.0) && domain.value(0.0) == 0.0) return with_anchor(std::move(domain), a);
        return normalize_anchor(domain, a);
    }
    return domain;
}

StarlikeDomain domain_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedProfile(std::string("domain specification is not valid JSON: ") + e.what());
    }
    return domain_from_json(j);
}

StarlikeDomain load_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open domain file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return domain_from_string(ss.str());
}

nlohmann::json domain_to_json(const StarlikeDomain& domain) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const ProfilePiece& p : domain.profile().pieces) {
        nlohmann::json jp;
        jp["interval"] = {real_to_json(p.lo), real_to_json(p.hi)};
        jp["kind"] = to_string(p.kind);
        if (p.kind == PieceKind::Polynomial) jp["coeffs"] = p.coeffs;
        if (p.kind == PieceKind::Constant) jp["level"] = p.level;
        pieces.push_back(std::move(jp));
    }
    nlohmann::json j;
    j["version"] = kDomainSpecVersion;
    j["pieces"] = std::move(pieces);
    if (domain.anchor()) j["anchor"] = {domain.anchor()->real(), domain.anchor()->imag()};
    return j;
}

}  // namespace starlike
