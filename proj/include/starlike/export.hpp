#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "starlike/classify.hpp"
#include "starlike/domain.hpp"
#include "starlike/gallery.hpp"
#include "starlike/metric.hpp"
#include "starlike/oracles.hpp"
#include "starlike/sigma.hpp"

namespace starlike {

/// 17 significant digits in scientific notation; "inf", "-inf", "nan".
std::string format_real(double x);

/// t, delta_tilde_plus, delta_tilde_minus, delta_plus, delta_minus, omega, rho, clearance
void write_gauge_csv(std::ostream& os, const std::vector<AxisGaugeSample>& samples);

struct SigmaRow {
    AxisGaugeSample gauges;
    ClearanceCheck check;
};

/// t, re_sigma, im_sigma, delta_plus, delta_minus, omega, clearance, clearance_bound, clearance_pass
void write_sigma_csv(std::ostream& os, const std::vector<SigmaRow>& rows);

/// n, t_n, y_n, re_z_plus, re_z_minus, omega_t_n, delta_n
void write_markers_csv(std::ostream& os, const MarkerSequence& markers);

/// t, rho
void write_ratio_csv(std::ostream& os, const std::vector<RatioSample>& trace);

/// t, re_phi, im_phi, arg_deviation
void write_oracle_csv(std::ostream& os, const std::vector<SlopeSample>& trace);

/// k, t_k, s_k, a_k, b_k
void write_construction_csv(std::ostream& os, const Omega3Construction& construction);

nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const QuasiGeodesicCertificate& certificate);
nlohmann::json to_json(const SlopeVerdict& verdict);
nlohmann::json to_json(const SemigroupType& type);
nlohmann::json to_json(const MarkerSequence& markers);
nlohmann::json to_json(const MarkerReport& report);
nlohmann::json to_json(const DistanceBound& bound);
nlohmann::json to_json(const EasyCaseResult& result);
nlohmann::json complex_to_json(cplx z);

}  // namespace starlike
