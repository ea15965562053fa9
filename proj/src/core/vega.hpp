#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layout.hpp"
#include "model.hpp"

namespace gridplot {

inline constexpr const char* kVegaLiteSchemaUrl =
    "https://vega.github.io/schema/vega-lite/v5.json";
// pinned runtime versions for the self-contained HTML export
inline constexpr const char* kVegaVersion = "5.30.0";
inline constexpr const char* kVegaLiteVersion = "5.23.0";
inline constexpr const char* kVegaEmbedVersion = "6.26.0";

struct ComponentStyle {
    std::optional<double> size;           // node area / stroke width
    std::vector<std::string> color;       // single color or scale range
    std::optional<std::string> data;      // field to color-encode
    std::string data_type = "quantitative";
    bool show_flow = false;               // edge types only
};

struct PlotOptions {
    int width = 500;
    int height = 500;
    std::vector<std::string> node_components{"bus"};
    std::vector<std::string> connected_components{"gen", "load", "shunt",
                                                  "storage"};
    std::vector<std::string> edge_components{"branch", "dcline", "switch",
                                             "transformer"};
    std::map<std::string, ComponentStyle> styles;
    LayoutConfig layout;
    bool fixed = false;
};

/// Immutable Vega-Lite v5 specification tree.
struct PlotSpec {
    json tree;
};

struct PowerPlotResult {
    PlotSpec spec;
    LayoutStats layout_stats;
};

PowerPlotResult powerplot(const CaseData& data, const PlotOptions& opts = {});

/// Path elements are strings (object keys) or integers (array indices).
json spec_get(const PlotSpec& spec, const json& path);
PlotSpec spec_set(const PlotSpec& spec, const json& path, json value);

/// Self-contained HTML document embedding the spec.
std::string to_html(const PlotSpec& spec);

} // namespace gridplot
