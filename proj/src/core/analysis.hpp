#pragma once

#include <map>
#include <string>
#include <vector>

#include "tabular.hpp"
#include "vega.hpp"

namespace gridplot {

/// Bus-degree study across a set of cases, bucketed by network size.
struct DegreeReport {
    struct CaseEntry {
        std::string name;
        int bus_count = 0;
        std::string size_class; // small | medium | large
        int max_degree = 0;
        ComponentRef max_degree_bus;
        std::map<int, int> histogram;
    };
    std::vector<CaseEntry> cases;
    std::map<std::string, std::map<int, double>> class_distribution; // sums to 1
    std::map<std::string, int> class_max_degree;
};

std::string size_class_of(int bus_count);

/// Bus-only branch graphs; classes assigned by bus count and distributions
/// aggregated within each class.
DegreeReport degree_report(const std::vector<Network>& cases);

json degree_report_json(const DegreeReport& report);
Table degree_report_table(const DegreeReport& report);
PlotSpec degree_report_chart(const DegreeReport& report);

/// Voltage-magnitude metrics of the bus table grouped by base_kv.
Table voltage_stats(const Network& net);

/// Overwrite record fields from a solution tree (component-type -> id ->
/// fields), e.g. to attach OPF results before analysis or plotting.
void merge_solution(Network& net, const json& solution);

} // namespace gridplot
