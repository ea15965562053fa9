#include "options.hpp"

namespace gridplot {

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
    std::vector<std::string> out;
    if (!j.is_array())
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " must be an array of strings");
    for (const auto& v : j) {
        if (!v.is_string())
            throw Error(ErrorCode::InvalidArgument,
                        std::string(what) + " must contain strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

LayoutConfig layout_config_from_json(const json& j) {
    LayoutConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object())
        throw Error(ErrorCode::InvalidArgument, "layout config must be an object");
    if (j.contains("algorithm")) {
        auto alg = parse_algorithm(j["algorithm"].get<std::string>());
        if (!alg)
            throw Error(ErrorCode::InvalidArgument,
                        "unknown layout algorithm '" +
                            j["algorithm"].get<std::string>() + "'");
        cfg.algorithm = *alg;
    }
    if (j.contains("iterations")) cfg.iterations = j["iterations"].get<int>();
    if (j.contains("C")) cfg.repulsion_c = j["C"].get<double>();
    if (j.contains("K")) cfg.edge_length_k = j["K"].get<double>();
    if (j.contains("spring_k")) cfg.spring_k = j["spring_k"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("fixed")) cfg.fixed = j["fixed"].get<bool>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("max_sweeps")) cfg.max_sweeps = j["max_sweeps"].get<int>();
    cfg.check();
    return cfg;
}

GraphConfig graph_config_from_json(const json& j) {
    GraphConfig cfg;
    if (j.is_null()) return cfg;
    if (j.contains("node_components"))
        cfg.node_components = string_list(j["node_components"], "node_components");
    if (j.contains("connected_components"))
        cfg.connected_components =
            string_list(j["connected_components"], "connected_components");
    if (j.contains("edge_components"))
        cfg.edge_components = string_list(j["edge_components"], "edge_components");
    if (j.contains("exclude_inactive"))
        cfg.exclude_inactive = j["exclude_inactive"].get<bool>();
    return cfg;
}

PlotOptions plot_options_from_json(const json& j) {
    PlotOptions opts;
    if (j.is_null()) return opts;
    if (!j.is_object())
        throw Error(ErrorCode::InvalidArgument, "plot options must be an object");
    if (j.contains("width")) opts.width = j["width"].get<int>();
    if (j.contains("height")) opts.height = j["height"].get<int>();
    if (j.contains("node_components"))
        opts.node_components = string_list(j["node_components"], "node_components");
    if (j.contains("connected_components"))
        opts.connected_components =
            string_list(j["connected_components"], "connected_components");
    if (j.contains("edge_components"))
        opts.edge_components = string_list(j["edge_components"], "edge_components");
    if (j.contains("fixed")) opts.fixed = j["fixed"].get<bool>();
    if (j.contains("layout")) opts.layout = layout_config_from_json(j["layout"]);
    if (j.contains("styles")) {
        for (auto it = j["styles"].begin(); it != j["styles"].end(); ++it) {
            ComponentStyle style;
            const json& s = it.value();
            if (s.contains("size")) style.size = s["size"].get<double>();
            if (s.contains("color")) {
                if (s["color"].is_string())
                    style.color = {s["color"].get<std::string>()};
                else
                    style.color = string_list(s["color"], "color");
            }
            if (s.contains("data")) style.data = s["data"].get<std::string>();
            if (s.contains("data_type"))
                style.data_type = s["data_type"].get<std::string>();
            if (s.contains("show_flow")) style.show_flow = s["show_flow"].get<bool>();
            opts.styles[it.key()] = std::move(style);
        }
    }
    if (opts.width <= 0 || opts.height <= 0)
        throw Error(ErrorCode::InvalidArgument, "width/height must be positive");
    return opts;
}

} // namespace gridplot
