#include "model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "matpower.hpp"

namespace gridplot {

const char* Violation::kind_name() const {
    switch (kind) {
    case Kind::MissingIndex: return "MissingIndex";
    case Kind::IndexMismatch: return "IndexMismatch";
    case Kind::DanglingBusRef: return "DanglingBusRef";
    case Kind::BadStatus: return "BadStatus";
    case Kind::NonFiniteNumber: return "NonFiniteNumber";
    }
    return "Unknown";
}

const json* Network::find_component(const ComponentRef& ref) const {
    auto t = components.find(ref.type);
    if (t == components.end()) return nullptr;
    auto r = t->second.find(ref.id);
    if (r == t->second.end()) return nullptr;
    return &r->second;
}

bool Network::has_bus(long long bus_id) const {
    auto t = components.find("bus");
    if (t == components.end()) return false;
    return t->second.count(std::to_string(bus_id)) > 0;
}

std::string Network::name() const {
    if (metadata.contains("name") && metadata["name"].is_string())
        return metadata["name"].get<std::string>();
    return "";
}

const json& get_component(const Network& net, const ComponentRef& ref) {
    auto t = net.components.find(ref.type);
    if (t == net.components.end())
        throw Error(ErrorCode::UnknownComponentType,
                    "unknown component type '" + ref.type + "'");
    auto r = t->second.find(ref.id);
    if (r == t->second.end())
        throw Error(ErrorCode::UnknownId,
                    "no '" + ref.type + "' with id '" + ref.id + "'");
    return r->second;
}

std::optional<std::string> bus_ref_field(const std::string& type, const json& record) {
    std::string preferred = type + "_bus";
    if (record.contains(preferred)) return preferred;
    if (record.contains("bus")) return std::string("bus");
    for (auto it = record.begin(); it != record.end(); ++it)
        if (it.key().size() > 4 && it.key().ends_with("_bus"))
            return it.key();
    return std::nullopt;
}

const std::string* status_field(const json& record) {
    static const std::string names[] = {"status", "br_status", "gen_status"};
    for (const auto& n : names)
        if (record.contains(n)) return &n;
    return nullptr;
}

bool is_active(const json& record) {
    const std::string* f = status_field(record);
    if (!f) return true;
    const json& v = record[*f];
    return !(v.is_number() && v.get<double>() == 0.0);
}

namespace {

bool is_edge_record(const json& record) {
    return (record.contains("f_bus") && record.contains("t_bus")) ||
           (record.contains("source") && record.contains("target"));
}

bool resolves_bus(const Network& net, const json& v) {
    if (v.is_number_integer()) return net.has_bus(v.get<long long>());
    if (v.is_number()) {
        double d = v.get<double>();
        return d == std::floor(d) && net.has_bus(static_cast<long long>(d));
    }
    if (v.is_string()) {
        auto t = net.components.find("bus");
        return t != net.components.end() &&
               t->second.count(v.get<std::string>()) > 0;
    }
    return false;
}

void check_finite(const json& v, const ComponentRef& ref,
                  std::vector<Violation>& out) {
    if (v.is_number_float() && !std::isfinite(v.get<double>())) {
        out.push_back({Violation::Kind::NonFiniteNumber, ref, "non-finite number"});
    } else if (v.is_structured()) {
        for (const auto& el : v) check_finite(el, ref, out);
    }
}

} // namespace

std::vector<Violation> validate(const Network& net) {
    std::vector<Violation> out;
    for (const auto& [type, recs] : net.components) {
        for (const auto& [id, rec] : recs) {
            ComponentRef ref{type, id};
            if (!rec.is_object() || !rec.contains("index") ||
                !rec["index"].is_number_integer()) {
                out.push_back({Violation::Kind::MissingIndex, ref,
                               "record lacks integer 'index'"});
                continue;
            }
            long long idx = rec["index"].get<long long>();
            if (std::to_string(idx) != id)
                out.push_back({Violation::Kind::IndexMismatch, ref,
                               "id does not match 'index'=" + std::to_string(idx)});
            check_finite(rec, ref, out);
            if (const std::string* sf = status_field(rec)) {
                const json& s = rec[*sf];
                bool ok = s.is_number() &&
                          (s.get<double>() == 0.0 || s.get<double>() == 1.0);
                if (!ok)
                    out.push_back({Violation::Kind::BadStatus, ref,
                                   "'" + *sf + "' must be 0 or 1"});
            }
            if (type == "bus") continue;
            if (is_edge_record(rec)) {
                const char* from = rec.contains("f_bus") ? "f_bus" : "source";
                const char* to = rec.contains("t_bus") ? "t_bus" : "target";
                if (!resolves_bus(net, rec[from]))
                    out.push_back({Violation::Kind::DanglingBusRef, ref,
                                   std::string(from) + " references missing bus"});
                if (!resolves_bus(net, rec[to]))
                    out.push_back({Violation::Kind::DanglingBusRef, ref,
                                   std::string(to) + " references missing bus"});
            } else if (auto bf = bus_ref_field(type, rec)) {
                if (!resolves_bus(net, rec[*bf]))
                    out.push_back({Violation::Kind::DanglingBusRef, ref,
                                   "'" + *bf + "' references missing bus"});
            }
        }
    }
    return out;
}

namespace {

// A top-level JSON entry is a component table when it is a non-empty object
// whose values are all objects carrying "index".
bool looks_like_component_table(const json& v) {
    if (!v.is_object() || v.empty()) return false;
    for (const auto& el : v)
        if (!el.is_object() || !el.contains("index")) return false;
    return true;
}

void reject_non_finite(const json& v) {
    if (v.is_number_float() && !std::isfinite(v.get<double>()))
        throw Error(ErrorCode::InvalidArgument, "non-finite number in input");
    if (v.is_structured())
        for (const auto& el : v) reject_non_finite(el);
}

} // namespace

Network network_from_json(const json& j) {
    if (!j.is_object())
        throw Error(ErrorCode::SyntaxError, "case JSON must be an object");
    reject_non_finite(j);
    Network net;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (looks_like_component_table(it.value())) {
            auto& table = net.components[it.key()];
            for (auto r = it.value().begin(); r != it.value().end(); ++r)
                table[r.key()] = r.value();
        } else {
            net.metadata[it.key()] = it.value();
        }
    }
    // accept "baseMVA" as an alias on ingest
    if (net.metadata.contains("baseMVA") && !net.metadata.contains("base_mva")) {
        net.metadata["base_mva"] = net.metadata["baseMVA"];
        net.metadata.erase("baseMVA");
    }
    return net;
}

json network_to_json(const Network& net) {
    json j = net.metadata;
    for (const auto& [type, recs] : net.components) {
        json table = json::object();
        for (const auto& [id, rec] : recs) table[id] = rec;
        j[type] = std::move(table);
    }
    return j;
}

CaseData case_from_json(const json& j) {
    bool multi = j.is_object() && j.contains("nw") && j["nw"].is_object() &&
                 j.value("multinetwork", false);
    if (!multi) return network_from_json(j);
    MultiNetwork mn;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "nw") {
            for (auto n = it.value().begin(); n != it.value().end(); ++n)
                mn.networks[n.key()] = network_from_json(n.value());
        } else {
            mn.metadata[it.key()] = it.value();
        }
    }
    if (mn.networks.empty())
        throw Error(ErrorCode::SyntaxError, "multinetwork with no networks");
    return mn;
}

json case_to_json(const CaseData& data) {
    if (std::holds_alternative<Network>(data))
        return network_to_json(std::get<Network>(data));
    const auto& mn = std::get<MultiNetwork>(data);
    json j = mn.metadata;
    j["multinetwork"] = true;
    json nws = json::object();
    for (const auto& [id, net] : mn.networks) nws[id] = network_to_json(net);
    j["nw"] = std::move(nws);
    return j;
}

CaseData parse_case(const std::string& text, const std::string& format) {
    if (format == "matpower" || format == "m")
        return to_network(parse_matpower(text));
    if (format == "json") {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded())
            throw Error(ErrorCode::SyntaxError, "invalid JSON");
        return case_from_json(j);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown case format '" + format + "'");
}

CaseData load_case_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string fmt = path.ends_with(".m") ? "matpower" : "json";
    return parse_case(buf.str(), fmt);
}

std::string dump_canonical(const json& j) {
    return j.dump(2);
}

bool id_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size() &&
        a.find_first_not_of("0123456789") == std::string::npos &&
        b.find_first_not_of("0123456789") == std::string::npos)
        return a.size() < b.size();
    return a < b;
}

} // namespace gridplot
