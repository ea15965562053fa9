#include <doctest.h>

#include <numeric>
#include <random>

#include "core/graph.hpp"
#include "helpers.hpp"

using namespace gridplot;
using testutil::bus_graph;
using testutil::make_network;

TEST_CASE("path graph degrees") {
    PowerGraph g = bus_graph(testutil::path_network(3));
    CHECK(degree(g, 0) == 1);
    CHECK(degree(g, 1) == 2);
    CHECK(degree(g, 2) == 1);
    auto [d, ref] = max_degree(g);
    CHECK(d == 2);
    CHECK(ref == ComponentRef{"bus", "2"});
}

TEST_CASE("single node has degree zero") {
    PowerGraph g = bus_graph(make_network(1, {}));
    auto [d, ref] = max_degree(g);
    CHECK(d == 0);
    CHECK(ref == ComponentRef{"bus", "1"});
}

TEST_CASE("max_degree of an empty graph is an error") {
    PowerGraph g;
    try {
        max_degree(g);
        FAIL("expected EmptyGraph");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyGraph);
    }
}

TEST_CASE("max_degree ties break to the smallest node index") {
    // 4-cycle: every node has degree 2
    PowerGraph g = bus_graph(make_network(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}));
    auto [d, ref] = max_degree(g);
    CHECK(d == 2);
    CHECK(ref == ComponentRef{"bus", "1"});
}

TEST_CASE("connected components become connector edges") {
    Network net = make_network(1, {});
    net.components["gen"]["1"] = {{"index", 1}, {"gen_bus", 1}, {"gen_status", 1}};
    PowerGraph g = build_graph(net);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_comp_map.empty());
    REQUIRE(g.edge_connector_map.size() == 1);
    CHECK(g.edge_connector_map.begin()->second == ComponentRef{"gen", "1"});
    CHECK(g.node_comp_map[0] == ComponentRef{"bus", "1"});
    CHECK(g.node_comp_map[1] == ComponentRef{"gen", "1"});
}

TEST_CASE("case39 default graph matches the component counts") {
    const Network& net = testutil::case39();
    PowerGraph g = build_graph(net);
    size_t expected_nodes = net.components.at("bus").size() +
                            net.components.at("gen").size() +
                            net.components.at("load").size();
    if (net.components.count("shunt"))
        expected_nodes += net.components.at("shunt").size();
    CHECK(static_cast<size_t>(g.node_count()) == expected_nodes);

    size_t connectors = expected_nodes - net.components.at("bus").size();
    CHECK(g.edge_connector_map.size() == connectors);
    size_t branch_rows = 0;
    for (const auto& [key, refs] : g.edge_comp_map) branch_rows += refs.size();
    CHECK(branch_rows == net.components.at("branch").size());
}

TEST_CASE("case1354 bus-only graph peaks at bus 1001 with degree 14") {
    PowerGraph g = bus_graph(testutil::case1354());
    auto [d, ref] = max_degree(g);
    CHECK(d == 14);
    CHECK(ref == ComponentRef{"bus", "1001"});

    auto hist = degree_histogram(g);
    CHECK(hist.rbegin()->first == 14);
}

TEST_CASE("parallel branches collapse in the adjacency but not the map") {
    Network net = make_network(2, {{1, 2}, {1, 2}});
    PowerGraph g = bus_graph(net);
    CHECK(g.adj[0].size() == 1);
    REQUIRE(g.edge_comp_map.count({0, 1}) == 1);
    CHECK(g.edge_comp_map.at({0, 1}).size() == 2);
}

TEST_CASE("exclude_inactive drops status-0 components") {
    Network net = make_network(3, {{1, 2}, {2, 3}});
    net.components["branch"]["2"]["br_status"] = 0;
    net.components["gen"]["1"] = {{"index", 1}, {"gen_bus", 3}, {"gen_status", 0}};
    GraphConfig cfg;
    cfg.exclude_inactive = true;
    PowerGraph g = build_graph(net, cfg);
    CHECK(g.node_count() == 3); // inactive gen dropped
    size_t edges = 0;
    for (const auto& [key, refs] : g.edge_comp_map) edges += refs.size();
    CHECK(edges == 1);
}

TEST_CASE("edge referencing an excluded bus is a MissingEndpoint") {
    Network net = make_network(2, {{1, 2}});
    GraphConfig cfg;
    cfg.node_components = {};
    cfg.connected_components = {};
    cfg.edge_components = {"branch"};
    try {
        build_graph(net, cfg);
        FAIL("expected MissingEndpoint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingEndpoint);
    }
}

TEST_CASE("incidence matrix basics") {
    PowerGraph single = bus_graph(make_network(2, {{1, 2}}));
    IncidenceMatrix m1 = incidence_matrix(single);
    CHECK(m1.rows == 2);
    CHECK(m1.cols == 1);
    REQUIRE(m1.entries.size() == 2);
    int sum = 0;
    for (auto [r, c, v] : m1.entries) sum += v;
    CHECK(sum == 0);

    PowerGraph tri = bus_graph(make_network(3, {{1, 2}, {2, 3}, {1, 3}}));
    IncidenceMatrix m2 = incidence_matrix(tri);
    CHECK(m2.rows == 3);
    CHECK(m2.cols == 3);
    std::vector<int> col_sum(3, 0), col_nnz(3, 0);
    for (auto [r, c, v] : m2.entries) {
        col_sum[c] += v;
        col_nnz[c] += 1;
    }
    for (int c = 0; c < 3; ++c) {
        CHECK(col_sum[c] == 0);
        CHECK(col_nnz[c] == 2);
    }
}

TEST_CASE("case39 bus-only incidence matrix is 39 by 46") {
    IncidenceMatrix m = incidence_matrix(bus_graph(testutil::case39()));
    CHECK(m.rows == 39);
    CHECK(m.cols == 46);
}

TEST_CASE("BFS shortest paths") {
    PowerGraph g = bus_graph(testutil::path_network(3));
    auto d = shortest_paths(g, 0);
    CHECK(d == std::vector<int>{0, 1, 2});

    PowerGraph disc = bus_graph(make_network(2, {}));
    auto d2 = shortest_paths(disc, 0);
    CHECK(d2[0] == 0);
    CHECK(d2[1] == kUnreachable);

    try {
        shortest_paths(g, 17);
        FAIL("expected UnknownNode");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownNode);
    }
}

TEST_CASE("case39 is connected") {
    PowerGraph g = build_graph(testutil::case39());
    for (int dist : shortest_paths(g, 0)) CHECK(dist != kUnreachable);
    CHECK(connected_components(g).size() == 1);
}

TEST_CASE("degree histogram") {
    PowerGraph star =
        bus_graph(make_network(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}));
    auto hist = degree_histogram(star);
    CHECK(hist == std::map<int, int>{{1, 4}, {4, 1}});

    PowerGraph empty_graph;
    CHECK(degree_histogram(empty_graph).empty());
}

TEST_CASE("handshake lemma and rebuild determinism on random graphs") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        Network net = testutil::random_connected_network(rng, 40);
        PowerGraph g = bus_graph(net);
        int degree_sum = 0;
        for (int i = 0; i < g.node_count(); ++i) degree_sum += degree(g, i);
        int simple_edges = 0;
        for (int i = 0; i < g.node_count(); ++i)
            simple_edges += static_cast<int>(g.adj[i].size());
        CHECK(degree_sum == simple_edges); // adjacency is symmetric
        CHECK(degree_sum == 2 * static_cast<int>(g.edge_comp_map.size()));

        PowerGraph h = bus_graph(net);
        CHECK(g.adj == h.adj);
        CHECK(g.node_comp_map == h.node_comp_map);
        CHECK(g.edge_comp_map == h.edge_comp_map);
    }
}

TEST_CASE("node ordering: buses ascending, then types lexicographic") {
    Network net = make_network(2, {{1, 2}});
    net.components["gen"]["3"] = {{"index", 3}, {"gen_bus", 1}, {"gen_status", 1}};
    net.components["load"]["1"] = {{"index", 1}, {"load_bus", 2}, {"status", 1}};
    net.components["gen"]["10"] = {{"index", 10}, {"gen_bus", 2}, {"gen_status", 1}};
    PowerGraph g = build_graph(net);
    REQUIRE(g.node_count() == 5);
    CHECK(g.node_comp_map[0] == ComponentRef{"bus", "1"});
    CHECK(g.node_comp_map[1] == ComponentRef{"bus", "2"});
    CHECK(g.node_comp_map[2] == ComponentRef{"gen", "3"});
    CHECK(g.node_comp_map[3] == ComponentRef{"gen", "10"}); // numeric id order
    CHECK(g.node_comp_map[4] == ComponentRef{"load", "1"});
}
