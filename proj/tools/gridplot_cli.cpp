// gridplot command line front end. Talks to the core exclusively through
// the C API in gridplot.h.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gridplot.h"

using json = nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBadFlags = 3;
constexpr int kExitFailure = 4;

struct CaseDeleter {
    void operator()(gp_case* c) const { gp_case_free(c); }
};
struct SpecDeleter {
    void operator()(gp_spec* s) const { gp_spec_free(s); }
};
using CasePtr = std::unique_ptr<gp_case, CaseDeleter>;
using SpecPtr = std::unique_ptr<gp_spec, SpecDeleter>;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { gp_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "gridplot: " << message << "\n";
    std::exit(code);
}

CasePtr load_case(const std::string& path) {
    gp_case* handle = nullptr;
    if (gp_case_load(path.c_str(), &handle) != GP_OK)
        fail(kExitParse, "cannot load '" + path + "': " + gp_last_error());
    return CasePtr(handle);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kExitFailure, "cannot open '" + path + "' for writing");
    out << content;
    if (!out.flush()) fail(kExitFailure, "failed writing '" + path + "'");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GRIDPLOT_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 1;
}

bool is_edge_type(const std::string& type) {
    return type == "branch" || type == "dcline" || type == "switch" ||
           type == "transformer";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string normalize_algorithm(const std::string& name) {
    if (name == "kk") return "kamada_kawai";
    return name;
}

void print_layout_stats(const std::string& stats_json) {
    json stats = json::parse(stats_json, nullptr, false);
    if (stats.is_discarded()) return;
    std::cout << "Time to compute layout [sec]: "
              << stats.value("elapsed_seconds", 0.0) << "\n";
}

int run_plot(const std::string& case_path, const std::string& layout_alg,
             std::uint64_t seed, bool fixed, const std::string& out_path,
             const std::string& components,
             const std::vector<std::string>& color_by,
             const std::vector<std::string>& sizes, bool flow, int width,
             int height) {
    CasePtr handle = load_case(case_path);

    json opts = {{"width", width},
                 {"height", height},
                 {"fixed", fixed},
                 {"layout",
                  {{"algorithm", normalize_algorithm(layout_alg)},
                   {"seed", seed}}}};

    std::vector<std::string> edge_types = {"branch", "dcline", "switch",
                                           "transformer"};
    if (!components.empty()) {
        std::vector<std::string> nodes, connected, edges;
        for (const auto& type : split(components, ',')) {
            if (type == "bus") nodes.push_back(type);
            else if (is_edge_type(type)) edges.push_back(type);
            else connected.push_back(type);
        }
        opts["node_components"] = nodes;
        opts["connected_components"] = connected;
        opts["edge_components"] = edges;
        edge_types = edges;
    }

    json styles = json::object();
    for (const auto& spec : color_by) {
        auto parts = split(spec, ':');
        if (parts.size() != 3)
            fail(kExitBadFlags, "--color-by expects TYPE:FIELD:DTYPE");
        styles[parts[0]]["data"] = parts[1];
        styles[parts[0]]["data_type"] = parts[2];
    }
    for (const auto& spec : sizes) {
        auto parts = split(spec, ':');
        if (parts.size() != 2) fail(kExitBadFlags, "--size expects TYPE:N");
        try {
            styles[parts[0]]["size"] = std::stod(parts[1]);
        } catch (const std::exception&) {
            fail(kExitBadFlags, "--size expects a numeric value");
        }
    }
    if (flow)
        for (const auto& type : edge_types) styles[type]["show_flow"] = true;
    if (!styles.empty()) opts["styles"] = styles;

    gp_spec* spec_handle = nullptr;
    OwnedString stats;
    if (gp_case_plot(handle.get(), opts.dump().c_str(), &spec_handle,
                     &stats.ptr) != GP_OK)
        fail(kExitFailure, std::string("plot failed: ") + gp_last_error());
    SpecPtr spec(spec_handle);

    OwnedString body;
    gp_status st = out_path.ends_with(".html")
                       ? gp_spec_to_html(spec.get(), &body.ptr)
                       : gp_spec_to_json(spec.get(), &body.ptr);
    if (st != GP_OK)
        fail(kExitFailure, std::string("emit failed: ") + gp_last_error());
    write_file(out_path, body.str());
    print_layout_stats(stats.str());
    return 0;
}

int run_layout(const std::string& case_path, const std::string& algorithm,
               double C, double K, int iterations, std::uint64_t seed,
               bool fixed, const std::string& out_path) {
    CasePtr handle = load_case(case_path);
    json cfg = {{"algorithm", normalize_algorithm(algorithm)},
                {"iterations", iterations},
                {"C", C},
                {"K", K},
                {"seed", seed},
                {"fixed", fixed}};
    gp_case* laid_handle = nullptr;
    OwnedString stats;
    if (gp_case_layout(handle.get(), cfg.dump().c_str(), &laid_handle,
                       &stats.ptr) != GP_OK)
        fail(kExitFailure, std::string("layout failed: ") + gp_last_error());
    CasePtr laid(laid_handle);
    OwnedString body;
    if (gp_case_to_json(laid.get(), &body.ptr) != GP_OK)
        fail(kExitFailure, gp_last_error());
    write_file(out_path, body.str());
    print_layout_stats(stats.str());
    return 0;
}

int run_convert(const std::string& case_path, const std::string& to,
                const std::string& out_path) {
    CasePtr handle = load_case(case_path);
    if (to == "json") {
        OwnedString body;
        if (gp_case_to_json(handle.get(), &body.ptr) != GP_OK)
            fail(kExitFailure, gp_last_error());
        write_file(out_path, body.str());
        return 0;
    }
    // csv: one file per component type under the output directory
    OwnedString types_json;
    if (gp_case_component_types(handle.get(), &types_json.ptr) != GP_OK)
        fail(kExitFailure, gp_last_error());
    json types = json::parse(types_json.str());
    types.push_back("metadata");
    for (const auto& type : types) {
        OwnedString csv;
        if (gp_case_table_csv(handle.get(), type.get<std::string>().c_str(),
                              &csv.ptr) != GP_OK)
            fail(kExitFailure, gp_last_error());
        write_file(out_path + "/" + type.get<std::string>() + ".csv", csv.str());
    }
    return 0;
}

int run_analyze_degrees(const std::vector<std::string>& case_paths, bool chart,
                        const std::string& out_path) {
    std::vector<CasePtr> owned;
    std::vector<const gp_case*> handles;
    for (const auto& path : case_paths) {
        owned.push_back(load_case(path));
        handles.push_back(owned.back().get());
    }
    OwnedString report;
    if (gp_degree_report(handles.data(), handles.size(), chart ? 1 : 0,
                         &report.ptr) != GP_OK)
        fail(kExitFailure, std::string("degree report failed: ") + gp_last_error());
    if (out_path.empty()) std::cout << report.str() << "\n";
    else write_file(out_path, report.str());
    if (!chart) {
        json j = json::parse(report.str(), nullptr, false);
        if (!j.is_discarded())
            for (const auto& entry : j["cases"])
                std::cerr << entry["name"].get<std::string>() << ": max degree "
                          << entry["max_degree"] << " at bus "
                          << entry["max_degree_bus"].get<std::string>() << "\n";
    }
    return 0;
}

int run_analyze_group(const std::string& case_path, const std::string& component,
                      const std::string& by, const std::string& aggs,
                      const std::string& out_path) {
    CasePtr handle = load_case(case_path);
    json agg_list = json::array();
    for (const auto& spec : split(aggs, ',')) {
        auto parts = split(spec, ':');
        if (parts.size() != 2) fail(kExitBadFlags, "--agg expects COL:FN,...");
        agg_list.push_back({parts[0], parts[1]});
    }
    OwnedString csv;
    if (gp_case_group_aggregate_csv(handle.get(), component.c_str(), by.c_str(),
                                    agg_list.dump().c_str(), &csv.ptr) != GP_OK)
        fail(kExitFailure, std::string("group failed: ") + gp_last_error());
    if (out_path.empty()) std::cout << csv.str();
    else write_file(out_path, csv.str());
    return 0;
}

int run_analyze_top(const std::string& case_path, const std::string& component,
                    const std::string& col, int k, bool ascending,
                    const std::string& out_path) {
    CasePtr handle = load_case(case_path);
    OwnedString csv;
    if (gp_case_top_k_csv(handle.get(), component.c_str(), col.c_str(), k,
                          ascending ? 0 : 1, &csv.ptr) != GP_OK)
        fail(kExitFailure, std::string("top failed: ") + gp_last_error());
    if (out_path.empty()) std::cout << csv.str();
    else write_file(out_path, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power grid visualization and analysis"};
    app.require_subcommand(1);

    const std::vector<std::string> algorithms = {
        "kk", "kamada_kawai", "spring", "sfdp", "spectral", "shell", "grid"};

    // plot
    auto* plot = app.add_subcommand("plot", "Emit a plot spec or HTML page");
    std::string plot_case, plot_layout = "kk", plot_out, plot_components;
    std::vector<std::string> plot_color_by, plot_sizes;
    std::uint64_t plot_seed = default_seed();
    bool plot_fixed = false, plot_flow = false;
    int plot_width = 500, plot_height = 500;
    plot->add_option("case", plot_case, "Case file (.m or .json)")->required();
    plot->add_option("--layout", plot_layout, "Layout algorithm")
        ->check(CLI::IsMember(algorithms));
    plot->add_option("--seed", plot_seed, "Layout random seed");
    plot->add_flag("--fixed", plot_fixed, "Pin existing coordinates");
    plot->add_option("--out", plot_out, "Output file (.vl.json or .html)")
        ->required();
    plot->add_option("--components", plot_components,
                     "Comma-separated component types to include");
    plot->add_option("--color-by", plot_color_by,
                     "TYPE:FIELD:DTYPE data-driven color encoding");
    plot->add_option("--size", plot_sizes, "TYPE:N mark size");
    plot->add_flag("--flow", plot_flow, "Draw flow-direction markers on edges");
    plot->add_option("--width", plot_width, "Plot width in pixels");
    plot->add_option("--height", plot_height, "Plot height in pixels");

    // layout
    auto* layout = app.add_subcommand("layout",
                                      "Persist computed coordinates to JSON");
    std::string layout_case, layout_alg = "kk", layout_out;
    double layout_c = 0.2, layout_k = 1.0;
    int layout_iterations = 100;
    std::uint64_t layout_seed = default_seed();
    bool layout_fixed = false;
    layout->add_option("case", layout_case, "Case file")->required();
    layout->add_option("--algorithm", layout_alg, "Layout algorithm")
        ->check(CLI::IsMember(algorithms));
    layout->add_option("--C", layout_c, "SFDP repulsion scale");
    layout->add_option("--K", layout_k, "SFDP optimal edge length");
    layout->add_option("--iterations", layout_iterations, "Iteration count");
    layout->add_option("--seed", layout_seed, "Layout random seed");
    layout->add_flag("--fixed", layout_fixed, "Pin existing coordinates");
    layout->add_option("--out", layout_out, "Output case JSON")->required();

    // convert
    auto* convert = app.add_subcommand("convert", "Convert a case to JSON or CSV");
    std::string convert_case, convert_to, convert_out;
    convert->add_option("case", convert_case, "Case file")->required();
    convert->add_option("--to", convert_to, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->required();
    convert->add_option("--out", convert_out,
                        "Output file (json) or directory (csv)")
        ->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Graph and tabular analytics");
    analyze->require_subcommand(1);

    auto* degrees = analyze->add_subcommand("degrees", "Bus degree report");
    std::vector<std::string> degrees_cases;
    std::string degrees_out;
    bool degrees_chart = false;
    degrees->add_option("case", degrees_cases, "Case file(s)")->required();
    degrees->add_flag("--chart", degrees_chart, "Emit a bar-chart spec");
    degrees->add_option("--out", degrees_out, "Output file (default stdout)");

    auto* group = analyze->add_subcommand("group", "Grouped aggregation");
    std::string group_case, group_component, group_by, group_aggs, group_out;
    group->add_option("case", group_case, "Case file")->required();
    group->add_option("--component", group_component, "Component type")->required();
    group->add_option("--by", group_by, "Grouping column")->required();
    group->add_option("--agg", group_aggs, "COL:FN list, e.g. vm:mean,vm:std")
        ->required();
    group->add_option("--out", group_out, "Output file (default stdout)");

    auto* top = analyze->add_subcommand("top", "Top-k rows by column");
    std::string top_case, top_component, top_col, top_out;
    int top_n = 5;
    bool top_asc = false;
    top->add_option("case", top_case, "Case file")->required();
    top->add_option("--component", top_component, "Component type")->required();
    top->add_option("--col", top_col, "Sort column")->required();
    top->add_option("-k", top_n, "Row count");
    top->add_flag("--asc", top_asc, "Sort ascending");
    top->add_option("--out", top_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadFlags;
    }

    if (*plot)
        return run_plot(plot_case, plot_layout, plot_seed, plot_fixed, plot_out,
                        plot_components, plot_color_by, plot_sizes, plot_flow,
                        plot_width, plot_height);
    if (*layout)
        return run_layout(layout_case, layout_alg, layout_c, layout_k,
                          layout_iterations, layout_seed, layout_fixed,
                          layout_out);
    if (*convert) return run_convert(convert_case, convert_to, convert_out);
    if (*degrees) return run_analyze_degrees(degrees_cases, degrees_chart,
                                             degrees_out);
    if (*group)
        return run_analyze_group(group_case, group_component, group_by,
                                 group_aggs, group_out);
    if (*top)
        return run_analyze_top(top_case, top_component, top_col, top_n, top_asc,
                               top_out);
    return kExitBadFlags;
}
