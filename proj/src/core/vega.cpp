#include "vega.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tabular.hpp"

namespace gridplot {

namespace {

const std::map<std::string, std::string> kDefaultColors = {
    {"bus", "#1f77b4"},    {"gen", "#ff7f0e"},  {"load", "#d62728"},
    {"branch", "#2ca02c"}, {"connector", "#b3b3b3"},
};
const char* kExtraPalette[] = {"#9467bd", "#8c564b", "#e377c2",
                               "#7f7f7f", "#bcbd22", "#17becf"};

struct Emitter {
    const PlotOptions& opts;
    const Network* net = nullptr;           // single-network view
    const MultiNetwork* mn = nullptr;
    Network laid_union;                      // carries the computed coords
    std::map<ComponentRef, Point> coords;
    std::vector<std::string> nw_ids;         // sorted, multinetwork only
    int extra_color_cursor = 0;
    std::map<std::string, std::string> assigned_colors;

    bool multinetwork() const { return mn != nullptr; }

    std::string color_for(const std::string& type) {
        if (auto it = kDefaultColors.find(type); it != kDefaultColors.end())
            return it->second;
        auto [it, inserted] = assigned_colors.try_emplace(type);
        if (inserted)
            it->second = kExtraPalette[extra_color_cursor++ %
                                       std::size(kExtraPalette)];
        return it->second;
    }

    const ComponentStyle* style_of(const std::string& type) const {
        auto it = opts.styles.find(type);
        return it == opts.styles.end() ? nullptr : &it->second;
    }

    bool type_present(const std::string& type) const {
        if (mn) {
            for (const auto& [nw, n] : mn->networks) {
                auto it = n.components.find(type);
                if (it != n.components.end() && !it->second.empty()) return true;
            }
            return false;
        }
        auto it = net->components.find(type);
        return it != net->components.end() && !it->second.empty();
    }

    // (nw, id, record) triples in table row order
    std::vector<std::tuple<std::string, std::string, const json*>>
    records_of(const std::string& type) const {
        std::vector<std::tuple<std::string, std::string, const json*>> out;
        if (!mn) {
            auto it = net->components.find(type);
            if (it == net->components.end()) return out;
            std::vector<std::string> ids;
            for (const auto& [id, rec] : it->second) ids.push_back(id);
            std::sort(ids.begin(), ids.end(), id_less);
            for (const auto& id : ids)
                out.emplace_back("", id, &it->second.at(id));
            return out;
        }
        std::set<std::string> all_ids;
        for (const auto& [nw, n] : mn->networks) {
            auto it = n.components.find(type);
            if (it == n.components.end()) continue;
            for (const auto& [id, rec] : it->second) all_ids.insert(id);
        }
        std::vector<std::string> ids(all_ids.begin(), all_ids.end());
        std::sort(ids.begin(), ids.end(), id_less);
        for (const auto& id : ids)
            for (const auto& nw : nw_ids) {
                const auto& n = mn->networks.at(nw);
                auto it = n.components.find(type);
                if (it == n.components.end()) continue;
                auto r = it->second.find(id);
                if (r != it->second.end()) out.emplace_back(nw, id, &r->second);
            }
        return out;
    }

    Point coord_of(const ComponentRef& ref) const {
        auto it = coords.find(ref);
        if (it == coords.end())
            throw Error(ErrorCode::MissingEndpoint,
                        "no coordinates for " + ref.type + " " + ref.id);
        return it->second;
    }

    static long long bus_of(const json& v) {
        if (v.is_number()) return static_cast<long long>(v.get<double>());
        return std::stoll(v.get<std::string>());
    }

    json row_object(const std::string& nw, const json& rec,
                    const std::string& type) const {
        json obj = json::object();
        for (auto it = rec.begin(); it != rec.end(); ++it)
            obj[it.key()] = it.value().is_structured() ? json(it.value().dump())
                                                       : it.value();
        obj["ComponentType"] = type;
        if (!nw.empty()) obj["nw"] = nw;
        return obj;
    }

    json base_encoding(bool edge) const {
        json enc = json::object();
        enc["x"] = {{"field", "x"}, {"type", "quantitative"}, {"axis", nullptr}};
        enc["y"] = {{"field", "y"}, {"type", "quantitative"}, {"axis", nullptr}};
        if (edge) {
            enc["x2"] = {{"field", "x2"}};
            enc["y2"] = {{"field", "y2"}};
        }
        return enc;
    }

    json tooltip_for(const json& rows) const {
        std::set<std::string> fields;
        for (const auto& row : rows)
            for (auto it = row.begin(); it != row.end(); ++it)
                fields.insert(it.key());
        for (const char* synthetic : {"x", "y", "x2", "y2", "x_mid", "y_mid",
                                      "flow_angle"})
            fields.erase(synthetic);
        json tip = json::array();
        for (const auto& f : fields) tip.push_back({{"field", f}});
        return tip;
    }

    void apply_color(json& enc, const std::string& type, const json& rows) {
        const ComponentStyle* style = style_of(type);
        if (style && style->data) {
            const std::string& field = *style->data;
            bool found = false;
            double lo = 0, hi = 0;
            bool have_extent = false;
            for (const auto& row : rows) {
                if (!row.contains(field)) continue;
                found = true;
                const json& v = row[field];
                if (v.is_number()) {
                    double d = v.get<double>();
                    if (!have_extent) { lo = hi = d; have_extent = true; }
                    lo = std::min(lo, d);
                    hi = std::max(hi, d);
                }
            }
            if (!found)
                throw Error(ErrorCode::UnknownDataField,
                            "component '" + type + "' has no field '" + field +
                                "'");
            json color = {{"field", field},
                          {"type", style->data_type},
                          {"legend", {{"title", type}}}};
            json scale = json::object();
            if (!style->color.empty()) scale["range"] = style->color;
            if (style->data_type == "quantitative" && have_extent)
                scale["domain"] = {lo, hi};
            if (!scale.empty()) color["scale"] = std::move(scale);
            enc["color"] = std::move(color);
            return;
        }
        std::string value = style && !style->color.empty() ? style->color.front()
                                                           : color_for(type);
        enc["color"] = {{"value", value}};
    }

    void apply_status_opacity(json& enc, const json& rows) {
        for (const char* field : {"status", "br_status", "gen_status"}) {
            bool present = false;
            for (const auto& row : rows)
                if (row.contains(field)) { present = true; break; }
            if (!present) continue;
            enc["opacity"] = {
                {"condition",
                 {{"test", std::string("datum.") + field + " == 0"},
                  {"value", 0.3}}},
                {"value", 1}};
            return;
        }
    }

    void finish_layer(json& layer) {
        if (multinetwork())
            layer["transform"] = {{{"filter", "datum.nw == network"}}};
    }

    json node_layer(const std::string& type) {
        json rows = json::array();
        for (const auto& [nw, id, rec] : records_of(type)) {
            json row = row_object(nw, *rec, type);
            Point p = coord_of({type, id});
            row["x"] = p[0];
            row["y"] = p[1];
            rows.push_back(std::move(row));
        }
        const ComponentStyle* style = style_of(type);
        json enc = base_encoding(false);
        enc["size"] = {{"value", style && style->size ? *style->size : 120.0}};
        apply_color(enc, type, rows);
        apply_status_opacity(enc, rows);
        enc["tooltip"] = tooltip_for(rows);
        json layer = {{"data", {{"values", std::move(rows)}}},
                      {"mark", {{"type", "circle"}}},
                      {"encoding", std::move(enc)}};
        finish_layer(layer);
        return layer;
    }

    json edge_group_layer(const std::string& type) {
        json rows = json::array();
        for (const auto& [nw, id, rec] : records_of(type)) {
            json row = row_object(nw, *rec, type);
            const char* from = rec->contains("f_bus") ? "f_bus" : "source";
            const char* to = rec->contains("t_bus") ? "t_bus" : "target";
            Point a = coord_of({"bus", std::to_string(bus_of((*rec)[from]))});
            Point b = coord_of({"bus", std::to_string(bus_of((*rec)[to]))});
            row["x"] = a[0];
            row["y"] = a[1];
            row["x2"] = b[0];
            row["y2"] = b[1];
            row["x_mid"] = (a[0] + b[0]) / 2.0;
            row["y_mid"] = (a[1] + b[1]) / 2.0;
            double deg = 90.0 - std::atan2(b[1] - a[1], b[0] - a[0]) * 180.0 /
                                    std::numbers::pi;
            row["flow_angle"] = std::fmod(deg + 360.0, 360.0);
            rows.push_back(std::move(row));
        }
        const ComponentStyle* style = style_of(type);
        json enc = base_encoding(true);
        enc["size"] = {{"value", style && style->size ? *style->size : 2.0}};
        apply_color(enc, type, rows);
        apply_status_opacity(enc, rows);
        enc["tooltip"] = tooltip_for(rows);
        json line = {{"mark", {{"type", "rule"}}}, {"encoding", std::move(enc)}};

        json sub = json::array();
        sub.push_back(std::move(line));
        if (style && style->show_flow) {
            json wenc = json::object();
            wenc["x"] = {{"field", "x_mid"}, {"type", "quantitative"},
                         {"axis", nullptr}};
            wenc["y"] = {{"field", "y_mid"}, {"type", "quantitative"},
                         {"axis", nullptr}};
            wenc["angle"] = {{"field", "flow_angle"},
                             {"type", "quantitative"},
                             {"scale", {{"domain", {0, 360}}, {"range", {0, 360}}}},
                             {"legend", nullptr}};
            wenc["size"] = {{"value", 200.0}};
            apply_color(wenc, type, rows);
            json wedge = {{"mark",
                           {{"type", "point"}, {"shape", "wedge"},
                            {"filled", true}}},
                          {"encoding", std::move(wenc)}};
            sub.push_back(std::move(wedge));
        }
        json group = {{"data", {{"values", std::move(rows)}}},
                      {"layer", std::move(sub)}};
        finish_layer(group);
        return group;
    }

    json connector_layer(const std::vector<std::string>& connected_types) {
        json rows = json::array();
        for (const auto& type : connected_types) {
            for (const auto& [nw, id, rec] : records_of(type)) {
                auto bf = bus_ref_field(type, *rec);
                if (!bf) continue;
                Point a = coord_of({type, id});
                Point b = coord_of({"bus", std::to_string(bus_of((*rec)[*bf]))});
                json row = {{"ComponentType", "connector"},
                            {"component_type", type},
                            {"index", (*rec)["index"]},
                            {"x", a[0]},
                            {"y", a[1]},
                            {"x2", b[0]},
                            {"y2", b[1]}};
                if (!nw.empty()) row["nw"] = nw;
                rows.push_back(std::move(row));
            }
        }
        const ComponentStyle* style = style_of("connector");
        json enc = base_encoding(true);
        enc["size"] = {{"value", style && style->size ? *style->size : 1.5}};
        apply_color(enc, "connector", rows);
        enc["tooltip"] = tooltip_for(rows);
        json layer = {{"data", {{"values", std::move(rows)}}},
                      {"mark", {{"type", "rule"}, {"strokeDash", {6, 4}}}},
                      {"encoding", std::move(enc)}};
        finish_layer(layer);
        return layer;
    }
};

Network union_network(const MultiNetwork& mn,
                      const std::vector<std::string>& nw_ids) {
    Network u;
    u.metadata = mn.metadata;
    for (const auto& nw : nw_ids) {
        const Network& n = mn.networks.at(nw);
        for (const auto& [type, recs] : n.components)
            for (const auto& [id, rec] : recs)
                u.components[type].try_emplace(id, rec);
    }
    return u;
}

} // namespace

PowerPlotResult powerplot(const CaseData& data, const PlotOptions& opts) {
    Emitter em{opts};
    if (std::holds_alternative<Network>(data)) {
        em.net = &std::get<Network>(data);
    } else {
        em.mn = &std::get<MultiNetwork>(data);
        for (const auto& [nw, n] : em.mn->networks) em.nw_ids.push_back(nw);
        std::sort(em.nw_ids.begin(), em.nw_ids.end(), id_less);
    }

    GraphConfig gcfg;
    gcfg.node_components = opts.node_components;
    gcfg.connected_components = opts.connected_components;
    gcfg.edge_components = opts.edge_components;

    Network source =
        em.mn ? union_network(*em.mn, em.nw_ids) : *em.net;

    LayoutConfig lcfg = opts.layout;
    lcfg.fixed = opts.fixed;
    LayoutStats stats;
    em.laid_union = layout_network(source, lcfg, gcfg, &stats);

    PowerGraph g = build_graph(em.laid_union, gcfg);
    for (int i = 0; i < g.node_count(); ++i) {
        const ComponentRef& ref = g.node_comp_map[i];
        const json& rec = *em.laid_union.find_component(ref);
        em.coords[ref] = {rec["xcoord_1"].get<double>(),
                          rec["ycoord_1"].get<double>()};
    }
    if (!em.mn) em.net = &em.laid_union; // rows carry the persisted coords

    json layers = json::array();
    for (const auto& type : opts.edge_components)
        if (em.type_present(type)) layers.push_back(em.edge_group_layer(type));

    std::vector<std::string> connected_present;
    for (const auto& type : opts.connected_components)
        if (em.type_present(type)) connected_present.push_back(type);
    if (!connected_present.empty())
        layers.push_back(em.connector_layer(connected_present));

    for (const auto& type : opts.node_components)
        if (em.type_present(type)) layers.push_back(em.node_layer(type));
    for (const auto& type : connected_present)
        layers.push_back(em.node_layer(type));

    json spec = {{"$schema", kVegaLiteSchemaUrl},
                 {"width", opts.width},
                 {"height", opts.height},
                 {"layer", std::move(layers)}};
    if (em.multinetwork()) {
        spec["params"] = {{{"name", "network"},
                           {"value", em.nw_ids.front()},
                           {"bind", {{"input", "select"},
                                     {"options", em.nw_ids},
                                     {"name", "Network: "}}}}};
    }

    return {PlotSpec{std::move(spec)}, stats};
}

json spec_get(const PlotSpec& spec, const json& path) {
    if (!path.is_array())
        throw Error(ErrorCode::InvalidArgument, "path must be a JSON array");
    const json* cur = &spec.tree;
    for (const auto& step : path) {
        if (step.is_string()) {
            if (!cur->is_object() || !cur->contains(step.get<std::string>()))
                throw Error(ErrorCode::PathNotFound,
                            "no key '" + step.get<std::string>() + "'");
            cur = &(*cur)[step.get<std::string>()];
        } else if (step.is_number_integer()) {
            auto idx = step.get<long long>();
            if (!cur->is_array() || idx < 0 ||
                idx >= static_cast<long long>(cur->size()))
                throw Error(ErrorCode::PathNotFound,
                            "index " + std::to_string(idx) + " out of range");
            cur = &(*cur)[static_cast<size_t>(idx)];
        } else {
            throw Error(ErrorCode::InvalidArgument,
                        "path elements must be strings or integers");
        }
    }
    return *cur;
}

PlotSpec spec_set(const PlotSpec& spec, const json& path, json value) {
    if (!path.is_array() || path.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "path must be a non-empty JSON array");
    PlotSpec out{spec.tree};
    json* cur = &out.tree;
    for (size_t i = 0; i < path.size(); ++i) {
        const json& step = path[i];
        bool last = i + 1 == path.size();
        if (step.is_string()) {
            std::string key = step.get<std::string>();
            if (!cur->is_object()) *cur = json::object();
            if (last) {
                (*cur)[key] = std::move(value);
                return out;
            }
            if (!cur->contains(key)) {
                (*cur)[key] =
                    path[i + 1].is_number_integer() ? json::array() : json::object();
            }
            cur = &(*cur)[key];
        } else if (step.is_number_integer()) {
            auto idx = step.get<long long>();
            if (idx < 0)
                throw Error(ErrorCode::InvalidArgument, "negative path index");
            if (!cur->is_array()) *cur = json::array();
            while (static_cast<long long>(cur->size()) <= idx)
                cur->push_back(json());
            if (last) {
                (*cur)[static_cast<size_t>(idx)] = std::move(value);
                return out;
            }
            json& next = (*cur)[static_cast<size_t>(idx)];
            if (next.is_null())
                next = path[i + 1].is_number_integer() ? json::array()
                                                       : json::object();
            cur = &next;
        } else {
            throw Error(ErrorCode::InvalidArgument,
                        "path elements must be strings or integers");
        }
    }
    return out; // unreachable
}

std::string to_html(const PlotSpec& spec) {
    std::string json_text = dump_canonical(spec.tree);
    std::string html;
    html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
    html += "<script src=\"https://cdn.jsdelivr.net/npm/vega@";
    html += kVegaVersion;
    html += "\"></script>\n<script src=\"https://cdn.jsdelivr.net/npm/vega-lite@";
    html += kVegaLiteVersion;
    html += "\"></script>\n<script src=\"https://cdn.jsdelivr.net/npm/vega-embed@";
    html += kVegaEmbedVersion;
    html += "\"></script>\n<style>body { margin: 1em; font-family: sans-serif; }"
            "</style>\n</head>\n<body>\n<div id=\"vis\"></div>\n<script>\n";
    html += "const spec = ";
    html += json_text;
    html += ";\nvegaEmbed(\"#vis\", spec, {actions: true});\n";
    html += "</script>\n</body>\n</html>\n";
    return html;
}

} // namespace gridplot
