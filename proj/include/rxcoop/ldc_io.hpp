#pragma once

#include <string>

#include <json.hpp>

#include "rxcoop/ldc.hpp"

namespace rxcoop {

/// Fixture interchange format:
/// {
///   "config": {"n11":., "n12":., "n21":., "n22":., "k12":., "k21":.},
///   "r1": ., "r2": .,
///   "G1": [[bit,...], ...],   // q rows of r1 bits, top level first
///   "G2": [[bit,...], ...],   // q rows of r2 bits
///   "F12": [[bit,...], ...],  // k12 rows of q bits
///   "F21": [[bit,...], ...]   // k21 rows of q bits
/// }
nlohmann::ordered_json scheme_to_json(const LdcConfig& config,
                                      const LdcScheme& scheme);

/// Parses and validates a fixture; throws std::invalid_argument /
/// nlohmann::json::exception on malformed input.
std::pair<LdcConfig, LdcScheme> scheme_from_json(const nlohmann::json& j);

std::pair<LdcConfig, LdcScheme> load_scheme_file(const std::string& path);

}  // namespace rxcoop
