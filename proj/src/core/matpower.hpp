#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace gridplot {

/// Raw contents of a MatPower case: literal matrices keyed by name.
struct RawMatpowerCase {
    std::string name;
    std::string version;
    double base_mva = 0.0;
    std::map<std::string, std::vector<std::vector<double>>> matrices;
    std::map<std::string, std::vector<std::string>> string_tables;
};

/// Parse the text of a MatPower `.m` case file (format version '2').
/// Only literal assignments are supported; comments are stripped.
RawMatpowerCase parse_matpower(const std::string& text);

/// Convert a raw case into the named-field Network model, applying per-unit
/// normalization (MW/MVAr divided by baseMVA, angles in radians) and
/// splitting bus loads and shunts into their own component types.
Network to_network(const RawMatpowerCase& raw);

} // namespace gridplot
