#pragma once

// Shared fixtures and oracles for the test suite.

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/matpower.hpp"
#include "core/model.hpp"

namespace testutil {

using namespace gridplot;

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline Network load_fixture(const std::string& name) {
    CaseData data = load_case_file(fixture_path(name));
    return std::get<Network>(data);
}

inline const Network& case39() {
    static Network net = load_fixture("pglib_opf_case39_epri.m");
    return net;
}

inline const Network& case1354() {
    static Network net = load_fixture("pglib_opf_case1354_pegase.m");
    return net;
}

inline json bus_record(long long id) {
    return json{{"index", id},       {"bus_type", 1}, {"vm", 1.0},
                {"va", 0.0},         {"vmax", 1.1},   {"vmin", 0.9},
                {"base_kv", 135.0}};
}

/// Network of buses 1..n connected by the given 1-based bus pairs.
inline Network make_network(int n, const std::vector<std::pair<int, int>>& edges) {
    Network net;
    net.metadata = {{"name", "synthetic"}, {"base_mva", 100.0}, {"per_unit", true}};
    for (int i = 1; i <= n; ++i)
        net.components["bus"][std::to_string(i)] = bus_record(i);
    int e = 1;
    for (auto [u, v] : edges) {
        net.components["branch"][std::to_string(e)] = {
            {"index", e}, {"f_bus", u}, {"t_bus", v}, {"br_status", 1}};
        ++e;
    }
    return net;
}

inline Network path_network(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    return make_network(n, edges);
}

inline PowerGraph bus_graph(const Network& net) {
    GraphConfig cfg;
    cfg.connected_components.clear();
    cfg.edge_components = {"branch"};
    return build_graph(net, cfg);
}

/// Random connected simple graph: a random spanning tree plus extra edges.
inline Network random_connected_network(std::mt19937& rng, int n,
                                        double extra_edge_frac = 0.5) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 2; i <= n; ++i) {
        std::uniform_int_distribution<int> pick(1, i - 1);
        edges.push_back({pick(rng), i});
    }
    int extra = static_cast<int>(extra_edge_frac * n);
    std::uniform_int_distribution<int> any(1, n);
    for (int t = 0; t < extra; ++t) {
        int u = any(rng), v = any(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        bool dup = false;
        for (auto& e : edges)
            if (e.first == u && e.second == v) { dup = true; break; }
        if (!dup) edges.push_back({u, v});
    }
    return make_network(n, edges);
}

/// Cyclic Jacobi eigensolver for small symmetric matrices — an oracle
/// independent of the library's eigensolver. Returns (values, vectors) with
/// eigenvalues ascending; vectors[k] is the unit eigenvector of values[k].
inline std::pair<std::vector<double>, std::vector<std::vector<double>>>
jacobi_eigen(std::vector<std::vector<double>> a) {
    int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a[x][x] < a[y][y]; });
    std::vector<double> values(n);
    std::vector<std::vector<double>> vectors(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        values[k] = a[order[k]][order[k]];
        for (int i = 0; i < n; ++i) vectors[k][i] = v[i][order[k]];
    }
    return {values, vectors};
}

inline std::vector<std::vector<double>> laplacian_of(const PowerGraph& g) {
    int n = g.node_count();
    std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u) {
        lap[u][u] = static_cast<double>(g.adj[u].size());
        for (int v : g.adj[u]) lap[u][v] = -1.0;
    }
    return lap;
}

/// Matches the library's sign convention: first non-negligible entry positive.
inline void canonical_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace testutil
