#include "analysis.hpp"

#include "graph.hpp"

namespace gridplot {

std::string size_class_of(int bus_count) {
    if (bus_count < 1000) return "small";
    if (bus_count <= 10000) return "medium";
    return "large";
}

DegreeReport degree_report(const std::vector<Network>& cases) {
    if (cases.empty())
        throw Error(ErrorCode::InvalidArgument, "degree_report needs >= 1 case");

    GraphConfig bus_only;
    bus_only.node_components = {"bus"};
    bus_only.connected_components = {};
    bus_only.edge_components = {"branch"};

    DegreeReport report;
    std::map<std::string, std::map<int, long long>> class_counts;
    for (const Network& net : cases) {
        PowerGraph g = build_graph(net, bus_only);
        DegreeReport::CaseEntry entry;
        entry.name = net.name();
        entry.bus_count = g.node_count();
        entry.size_class = size_class_of(entry.bus_count);
        for (const auto& [deg, count] : degree_histogram(g)) {
            entry.histogram[deg] = count;
            class_counts[entry.size_class][deg] += count;
        }
        if (g.node_count() > 0) {
            auto [deg, ref] = max_degree(g);
            entry.max_degree = deg;
            entry.max_degree_bus = ref;
        }
        report.cases.push_back(std::move(entry));
    }

    for (const auto& [cls, hist] : class_counts) {
        long long total = 0;
        int maxdeg = 0;
        for (const auto& [deg, count] : hist) {
            total += count;
            maxdeg = std::max(maxdeg, deg);
        }
        report.class_max_degree[cls] = maxdeg;
        auto& dist = report.class_distribution[cls];
        for (const auto& [deg, count] : hist)
            dist[deg] = static_cast<double>(count) / static_cast<double>(total);
    }
    return report;
}

json degree_report_json(const DegreeReport& report) {
    json j;
    j["cases"] = json::array();
    for (const auto& e : report.cases) {
        json hist = json::object();
        for (const auto& [deg, count] : e.histogram)
            hist[std::to_string(deg)] = count;
        j["cases"].push_back({{"name", e.name},
                              {"bus_count", e.bus_count},
                              {"size_class", e.size_class},
                              {"max_degree", e.max_degree},
                              {"max_degree_bus", e.max_degree_bus.id},
                              {"histogram", std::move(hist)}});
    }
    j["classes"] = json::object();
    for (const auto& [cls, dist] : report.class_distribution) {
        json d = json::object();
        for (const auto& [deg, frac] : dist) d[std::to_string(deg)] = frac;
        j["classes"][cls] = {{"distribution", std::move(d)},
                             {"max_degree", report.class_max_degree.at(cls)}};
    }
    return j;
}

Table degree_report_table(const DegreeReport& report) {
    Table t;
    t.columns = {{"size_class", ColumnType::String},
                 {"degree", ColumnType::Int},
                 {"fraction", ColumnType::Float}};
    for (const auto& [cls, dist] : report.class_distribution)
        for (const auto& [deg, frac] : dist)
            t.rows.push_back({cls, static_cast<long long>(deg), frac});
    return t;
}

PlotSpec degree_report_chart(const DegreeReport& report) {
    json spec = {{"$schema", kVegaLiteSchemaUrl},
                 {"width", 400},
                 {"height", 200},
                 {"data", {{"values", table_rows_json(degree_report_table(report))}}},
                 {"mark", {{"type", "bar"}}},
                 {"encoding",
                  {{"x", {{"field", "degree"}, {"type", "ordinal"}}},
                   {"y", {{"field", "fraction"}, {"type", "quantitative"}}},
                   {"color", {{"field", "size_class"}, {"type", "nominal"}}},
                   {"xOffset", {{"field", "size_class"}}}}}};
    return PlotSpec{std::move(spec)};
}

Table voltage_stats(const Network& net) {
    TableSet ts = to_tables(net);
    auto it = ts.components.find("bus");
    if (it == ts.components.end())
        throw Error(ErrorCode::UnknownComponentType, "case has no buses");
    return group_aggregate(it->second, "base_kv",
                           {{"vm", AggFn::Count},
                            {"vm", AggFn::Mean},
                            {"vm", AggFn::Std},
                            {"vm", AggFn::Min},
                            {"vm", AggFn::Max}});
}

void merge_solution(Network& net, const json& solution) {
    const json* root = &solution;
    if (solution.contains("solution")) root = &solution["solution"];
    for (auto tit = root->begin(); tit != root->end(); ++tit) {
        if (!tit.value().is_object()) continue;
        auto comp = net.components.find(tit.key());
        if (comp == net.components.end()) continue;
        for (auto rit = tit.value().begin(); rit != tit.value().end(); ++rit) {
            auto rec = comp->second.find(rit.key());
            if (rec == comp->second.end() || !rit.value().is_object()) continue;
            for (auto fit = rit.value().begin(); fit != rit.value().end(); ++fit)
                rec->second[fit.key()] = fit.value();
        }
    }
}

} // namespace gridplot
