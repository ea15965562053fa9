#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace gridplot {

using json = nlohmann::json;

/// Reference to a single component instance within a Network.
struct ComponentRef {
    std::string type;
    std::string id;

    auto operator<=>(const ComponentRef&) const = default;
};

struct Violation {
    enum class Kind {
        MissingIndex,
        IndexMismatch,
        DanglingBusRef,
        BadStatus,
        NonFiniteNumber,
    };
    Kind kind;
    ComponentRef ref;
    std::string detail;

    const char* kind_name() const;
};

/// A single power network: top-level metadata plus per-type component records.
/// Component types are open strings; each record is a JSON object that must
/// carry an integer "index" field.
struct Network {
    json metadata = json::object();
    std::map<std::string, std::map<std::string, json>> components;

    const json* find_component(const ComponentRef& ref) const;
    bool has_bus(long long bus_id) const;
    std::string name() const;
};

struct MultiNetwork {
    json metadata = json::object();
    std::map<std::string, Network> networks;
};

using CaseData = std::variant<Network, MultiNetwork>;

const json& get_component(const Network& net, const ComponentRef& ref);

std::vector<Violation> validate(const Network& net);

/// Field name carrying the bus reference for a connected component type,
/// e.g. "gen_bus" for gens. Falls back to "bus", then any "*_bus" field.
std::optional<std::string> bus_ref_field(const std::string& type, const json& record);

/// Status field of a record ("status", "br_status", "gen_status"), or null.
const std::string* status_field(const json& record);
bool is_active(const json& record);

Network network_from_json(const json& j);
json network_to_json(const Network& net);
CaseData case_from_json(const json& j);
json case_to_json(const CaseData& data);

CaseData load_case_file(const std::string& path);
CaseData parse_case(const std::string& text, const std::string& format);

/// 2-space indent, lexicographically sorted keys, shortest round-trip floats.
std::string dump_canonical(const json& j);

/// Numeric-aware id comparison (ids are decimal strings).
bool id_less(const std::string& a, const std::string& b);

} // namespace gridplot
