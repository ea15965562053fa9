#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace gridplot {

namespace {

long long bus_id_of(const json& v) {
    if (v.is_number()) return static_cast<long long>(v.get<double>());
    if (v.is_string()) return std::stoll(v.get<std::string>());
    throw Error(ErrorCode::InvalidArgument, "bus reference is not numeric");
}

std::vector<std::string> sorted_ids(const std::map<std::string, json>& recs,
                                    bool skip_inactive) {
    std::vector<std::string> ids;
    ids.reserve(recs.size());
    for (const auto& [id, rec] : recs) {
        if (skip_inactive && !is_active(rec)) continue;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end(), id_less);
    return ids;
}

} // namespace

PowerGraph build_graph(const Network& net, const GraphConfig& cfg) {
    PowerGraph g;

    auto present = [&](const std::string& type) {
        auto it = net.components.find(type);
        return it != net.components.end() && !it->second.empty();
    };

    // node ordering: buses ascending id, then other node types and connected
    // types grouped by type name, ascending id within each
    std::vector<std::string> node_types;
    for (const auto& t : cfg.node_components)
        if (t == "bus" && present(t)) node_types.push_back(t);
    std::vector<std::string> rest;
    for (const auto& t : cfg.node_components)
        if (t != "bus" && present(t)) rest.push_back(t);
    for (const auto& t : cfg.connected_components)
        if (present(t)) rest.push_back(t);
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    node_types.insert(node_types.end(), rest.begin(), rest.end());

    for (const auto& type : node_types) {
        for (const auto& id : sorted_ids(net.components.at(type),
                                         cfg.exclude_inactive)) {
            ComponentRef ref{type, id};
            g.node_of[ref] = g.node_count();
            g.node_comp_map.push_back(ref);
            g.adj.emplace_back();
        }
    }

    std::set<std::pair<int, int>> seen;
    auto link = [&](int u, int v) {
        auto key = std::minmax(u, v);
        if (seen.insert(key).second) {
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
        return std::pair<int, int>(key.first, key.second);
    };
    auto bus_node = [&](long long bus, const ComponentRef& owner) {
        auto it = g.node_of.find({"bus", std::to_string(bus)});
        if (it == g.node_of.end())
            throw Error(ErrorCode::MissingEndpoint,
                        owner.type + " " + owner.id + " references bus " +
                            std::to_string(bus) + " which is not a graph node");
        return it->second;
    };

    // real grid edges
    for (const auto& type : cfg.edge_components) {
        auto it = net.components.find(type);
        if (it == net.components.end()) continue;
        for (const auto& id : sorted_ids(it->second, cfg.exclude_inactive)) {
            const json& rec = it->second.at(id);
            ComponentRef ref{type, id};
            const char* from = rec.contains("f_bus") ? "f_bus" : "source";
            const char* to = rec.contains("t_bus") ? "t_bus" : "target";
            if (!rec.contains(from) || !rec.contains(to))
                throw Error(ErrorCode::MissingEndpoint,
                            type + " " + id + " lacks endpoint fields");
            int u = bus_node(bus_id_of(rec[from]), ref);
            int v = bus_node(bus_id_of(rec[to]), ref);
            g.edge_comp_map[link(u, v)].push_back(ref);
        }
    }

    // connector edges
    for (const auto& type : cfg.connected_components) {
        auto it = net.components.find(type);
        if (it == net.components.end()) continue;
        for (const auto& id : sorted_ids(it->second, cfg.exclude_inactive)) {
            const json& rec = it->second.at(id);
            ComponentRef ref{type, id};
            auto bf = bus_ref_field(type, rec);
            if (!bf)
                throw Error(ErrorCode::MissingEndpoint,
                            type + " " + id + " has no bus reference field");
            int u = g.node_of.at(ref);
            int v = bus_node(bus_id_of(rec[*bf]), ref);
            g.edge_connector_map[link(u, v)] = ref;
        }
    }

    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

int degree(const PowerGraph& g, int node) {
    if (node < 0 || node >= g.node_count())
        throw Error(ErrorCode::UnknownNode,
                    "node " + std::to_string(node) + " out of range");
    return static_cast<int>(g.adj[node].size());
}

std::pair<int, ComponentRef> max_degree(const PowerGraph& g) {
    if (g.node_count() == 0)
        throw Error(ErrorCode::EmptyGraph, "max_degree of empty graph");
    int best = 0;
    for (int i = 1; i < g.node_count(); ++i)
        if (g.adj[i].size() > g.adj[best].size()) best = i;
    return {static_cast<int>(g.adj[best].size()), g.node_comp_map[best]};
}

IncidenceMatrix incidence_matrix(const PowerGraph& g) {
    IncidenceMatrix m;
    m.rows = g.node_count();
    std::set<std::pair<int, int>> edges;
    for (const auto& [e, refs] : g.edge_comp_map) edges.insert(e);
    for (const auto& [e, ref] : g.edge_connector_map) edges.insert(e);
    for (const auto& [u, v] : edges) {
        m.entries.emplace_back(u, m.cols, 1);
        m.entries.emplace_back(v, m.cols, -1);
        ++m.cols;
    }
    return m;
}

std::vector<int> shortest_paths(const PowerGraph& g, int source) {
    if (source < 0 || source >= g.node_count())
        throw Error(ErrorCode::UnknownNode,
                    "source node " + std::to_string(source) + " out of range");
    std::vector<int> dist(g.node_count(), kUnreachable);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.adj[u])
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

std::map<int, int> degree_histogram(const PowerGraph& g) {
    std::map<int, int> hist;
    for (const auto& nbrs : g.adj) ++hist[static_cast<int>(nbrs.size())];
    return hist;
}

std::vector<std::vector<int>> connected_components(const PowerGraph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.node_count(), false);
    for (int s = 0; s < g.node_count(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = true;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int v : g.adj[comp[i]])
                if (!seen[v]) {
                    seen[v] = true;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace gridplot
