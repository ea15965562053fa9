#pragma once

#include <map>
#include <utility>
#include <vector>

#include "model.hpp"

namespace gridplot {

struct GraphConfig {
    std::vector<std::string> node_components{"bus"};
    std::vector<std::string> connected_components{"gen", "load", "shunt",
                                                  "storage"};
    std::vector<std::string> edge_components{"branch", "dcline", "switch",
                                             "transformer"};
    bool exclude_inactive = false;
};

/// Undirected visualization graph. Nodes are buses followed by connected
/// components (grouped by type, ascending id). The adjacency is a simple
/// graph; parallel branches share one adjacency entry but every branch is
/// recorded in edge_comp_map.
struct PowerGraph {
    std::vector<std::vector<int>> adj; // sorted neighbor lists
    std::vector<ComponentRef> node_comp_map;
    std::map<std::pair<int, int>, std::vector<ComponentRef>> edge_comp_map;
    std::map<std::pair<int, int>, ComponentRef> edge_connector_map;
    std::map<ComponentRef, int> node_of;

    int node_count() const { return static_cast<int>(adj.size()); }
    int edge_count() const {
        return static_cast<int>(edge_comp_map.size() + edge_connector_map.size());
    }
};

PowerGraph build_graph(const Network& net, const GraphConfig& cfg = {});

int degree(const PowerGraph& g, int node);
std::pair<int, ComponentRef> max_degree(const PowerGraph& g);

/// Node-by-edge incidence matrix in triplet form; each column holds +1 at the
/// lower-indexed endpoint and -1 at the other (fixed arbitrary orientation).
struct IncidenceMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, int>> entries; // (row, col, value)
};
IncidenceMatrix incidence_matrix(const PowerGraph& g);

inline constexpr int kUnreachable = -1;

/// Unweighted BFS hop distances from source; kUnreachable marks
/// disconnected nodes.
std::vector<int> shortest_paths(const PowerGraph& g, int source);

std::map<int, int> degree_histogram(const PowerGraph& g);

/// Connected components as node lists, ordered by smallest member index.
std::vector<std::vector<int>> connected_components(const PowerGraph& g);

} // namespace gridplot
