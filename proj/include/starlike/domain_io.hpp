#pragma once

#include <string>

#include <json.hpp>

#include "starlike/domain.hpp"

namespace starlike {

/// Current schema version of domain specification files.
inline constexpr int kDomainSpecVersion = 1;

/// Parses a domain specification:
///   {"version": 1,
///    "pieces": [{"interval": ["-inf", 0], "kind": "poly", "coeffs": [0, 0, 1]},
///               {"interval": [0, "+inf"], "kind": "minus_inf"}],
///    "anchor": [0, 0]}
/// Kinds are "poly" (coeffs ascending), "const" ("level", or a one-element
/// "coeffs"), "minus_inf" and "plus_inf". Infinite endpoints are the strings
/// "-inf"/"+inf". The optional anchor normalizes the domain at that boundary
/// foot. Throws MalformedProfile (and InvalidAnchor for a bad anchor).
StarlikeDomain domain_from_json(const nlohmann::json& spec);
StarlikeDomain domain_from_string(const std::string& text);
StarlikeDomain load_domain_file(const std::string& path);

nlohmann::json domain_to_json(const StarlikeDomain& domain);

/// Encodes a real, mapping infinities to "-inf"/"+inf".
nlohmann::json real_to_json(double x);
double real_from_json(const nlohmann::json& j);

}  // namespace starlike
