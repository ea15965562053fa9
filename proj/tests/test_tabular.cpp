#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "core/tabular.hpp"
#include "helpers.hpp"

using namespace gridplot;

namespace {

json cell(const Table& t, size_t row, const std::string& col) {
    return t.rows[row][t.require_col(col)];
}

Table small_bus_table() {
    Network net;
    net.metadata = {{"name", "t"}, {"base_mva", 100.0}};
    double base_kv[] = {69, 69, 138};
    double vm[] = {1.0, 1.1, 1.05};
    for (int i = 0; i < 3; ++i)
        net.components["bus"][std::to_string(i + 1)] = {{"index", i + 1},
                                                        {"base_kv", base_kv[i]},
                                                        {"vm", vm[i]}};
    return to_tables(net).components.at("bus");
}

} // namespace

TEST_CASE("case1354 gen table reproduces the documented row") {
    TableSet ts = to_tables(testutil::case1354());
    const Table& gen = ts.components.at("gen");
    CHECK(gen.row_count() == 260);

    int gen_bus_col = gen.require_col("gen_bus");
    bool found = false;
    for (size_t r = 0; r < gen.row_count(); ++r) {
        if (gen.rows[r][gen_bus_col].get<long long>() != 124) continue;
        found = true;
        CHECK(cell(gen, r, "pg").get<double>() == doctest::Approx(6.66).epsilon(1e-3));
        CHECK(cell(gen, r, "qg").get<double>() == doctest::Approx(1.33).epsilon(1e-3));
        CHECK(cell(gen, r, "pmax").get<double>() == doctest::Approx(10.0).epsilon(1e-3));
    }
    CHECK(found);
}

TEST_CASE("column union pads missing fields with null") {
    Network net;
    net.metadata = {{"name", "t"}, {"base_mva", 100.0}};
    net.components["bus"]["1"] = {{"index", 1}, {"custom", 5}};
    net.components["bus"]["2"] = {{"index", 2}};
    TableSet ts = to_tables(net);
    const Table& t = ts.components.at("bus");
    CHECK(cell(t, 0, "custom").get<long long>() == 5);
    CHECK(cell(t, 1, "custom").is_null());
}

TEST_CASE("every table carries index and ComponentType; rows sort by id") {
    Network net;
    net.metadata = {{"name", "t"}, {"base_mva", 100.0}};
    for (int id : {10, 2, 1}) // insertion order must not matter
        net.components["bus"][std::to_string(id)] = {{"index", id}};
    TableSet ts = to_tables(net);
    const Table& t = ts.components.at("bus");
    CHECK(t.col_index("index") >= 0);
    CHECK(t.col_index("ComponentType") >= 0);
    CHECK(cell(t, 0, "index").get<long long>() == 1);
    CHECK(cell(t, 1, "index").get<long long>() == 2);
    CHECK(cell(t, 2, "index").get<long long>() == 10);
    CHECK(cell(t, 0, "ComponentType").get<std::string>() == "bus");
}

TEST_CASE("multi-network tables gain an nw column") {
    Network nw;
    nw.metadata = {{"base_mva", 100.0}};
    for (int i = 1; i <= 3; ++i)
        nw.components["bus"][std::to_string(i)] = {{"index", i}};
    MultiNetwork mn;
    mn.metadata = {{"name", "mn"}, {"multinetwork", true}};
    mn.networks["1"] = nw;
    mn.networks["2"] = nw;
    TableSet ts = to_tables(mn);
    const Table& t = ts.components.at("bus");
    CHECK(t.row_count() == 6);
    CHECK(t.columns[0].first == "nw");
    CHECK(cell(t, 0, "nw").get<std::string>() == "1");
    CHECK(cell(t, 5, "nw").get<std::string>() == "2");
}

TEST_CASE("list-valued fields serialize as canonical JSON strings") {
    Network net;
    net.metadata = {{"name", "t"}, {"base_mva", 100.0}};
    net.components["gen"]["1"] = {{"index", 1},
                                  {"gen_bus", 1},
                                  {"cost", json::array({0.01, 40.0, 0.0})}};
    net.components["bus"]["1"] = {{"index", 1}};
    TableSet ts = to_tables(net);
    const Table& t = ts.components.at("gen");
    CHECK(cell(t, 0, "cost").get<std::string>() == "[0.01,40.0,0.0]");
}

TEST_CASE("metadata becomes a single-row table") {
    TableSet ts = to_tables(testutil::case39());
    const Table& meta = ts.metadata;
    CHECK(meta.row_count() == 1);
    CHECK(cell(meta, 0, "base_mva").get<double>() == 100.0);
}

TEST_CASE("group_aggregate on the documented example") {
    Table t = small_bus_table();
    Table out = group_aggregate(t, "base_kv",
                                {{"vm", AggFn::Count},
                                 {"vm", AggFn::Mean},
                                 {"vm", AggFn::Std},
                                 {"vm", AggFn::Min},
                                 {"vm", AggFn::Max}});
    REQUIRE(out.row_count() == 2);
    CHECK(cell(out, 0, "base_kv").get<double>() == 69.0);
    CHECK(cell(out, 0, "count").get<long long>() == 2);
    CHECK(cell(out, 0, "vm_mean").get<double>() == doctest::Approx(1.05));
    CHECK(cell(out, 0, "vm_min").get<double>() == 1.0);
    CHECK(cell(out, 0, "vm_max").get<double>() == 1.1);
    // sample std of {1.0, 1.1}
    CHECK(cell(out, 0, "vm_std").get<double>() ==
          doctest::Approx(std::sqrt(0.005)));
    CHECK(cell(out, 1, "base_kv").get<double>() == 138.0);
    CHECK(cell(out, 1, "vm_std").is_null()); // single row: n-1 undefined
}

TEST_CASE("group_aggregate rejects bad columns") {
    Table t = small_bus_table();
    CHECK_THROWS_AS(group_aggregate(t, "nope", {{"vm", AggFn::Mean}}), Error);
    CHECK_THROWS_AS(group_aggregate(t, "base_kv", {{"ComponentType", AggFn::Mean}}),
                    Error);
}

TEST_CASE("group_aggregate matches a brute-force oracle on random tables") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> group_of(0, 4);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::bernoulli_distribution is_null(0.15);

    for (int trial = 0; trial < 20; ++trial) {
        Table t;
        t.columns = {{"index", ColumnType::Int},
                     {"g", ColumnType::Int},
                     {"v", ColumnType::Float}};
        std::map<long long, std::vector<double>> groups;
        std::map<long long, long long> group_rows;
        for (int r = 0; r < 200; ++r) {
            long long g = group_of(rng);
            json v = is_null(rng) ? json(nullptr) : json(value(rng));
            t.rows.push_back({r, g, v});
            group_rows[g] += 1;
            if (!v.is_null()) groups[g].push_back(v.get<double>());
        }
        Table out = group_aggregate(t, "g",
                                    {{"v", AggFn::Count},
                                     {"v", AggFn::Mean},
                                     {"v", AggFn::Std},
                                     {"v", AggFn::Min},
                                     {"v", AggFn::Max}});
        REQUIRE(out.row_count() == group_rows.size());
        size_t r = 0;
        for (auto& [g, rows] : group_rows) {
            CHECK(cell(out, r, "g").get<long long>() == g);
            CHECK(cell(out, r, "count").get<long long>() == rows);
            const auto& vals = groups[g];
            if (vals.empty()) {
                CHECK(cell(out, r, "v_mean").is_null());
                CHECK(cell(out, r, "v_min").is_null());
            } else {
                double sum = 0;
                double lo = vals[0], hi = vals[0];
                for (double x : vals) {
                    sum += x;
                    lo = std::min(lo, x);
                    hi = std::max(hi, x);
                }
                double mean = sum / vals.size();
                CHECK(cell(out, r, "v_mean").get<double>() ==
                      doctest::Approx(mean).epsilon(1e-12));
                CHECK(cell(out, r, "v_min").get<double>() == lo); // exact
                CHECK(cell(out, r, "v_max").get<double>() == hi);
                if (vals.size() >= 2) {
                    double ss = 0;
                    for (double x : vals) ss += (x - mean) * (x - mean);
                    double stddev = std::sqrt(ss / (vals.size() - 1));
                    CHECK(cell(out, r, "v_std").get<double>() ==
                          doctest::Approx(stddev).epsilon(1e-12));
                    CHECK(mean >= lo);
                    CHECK(mean <= hi);
                } else {
                    CHECK(cell(out, r, "v_std").is_null());
                }
            }
            ++r;
        }
    }
}

TEST_CASE("top_k sorts and breaks ties by ascending index") {
    Table t;
    t.columns = {{"index", ColumnType::Int}, {"pmax", ColumnType::Float}};
    t.rows = {{1, 5.0}, {2, 1.0}, {3, 9.0}, {4, 5.0}};

    Table top2 = top_k(t, "pmax", 2);
    REQUIRE(top2.row_count() == 2);
    CHECK(cell(top2, 0, "pmax").get<double>() == 9.0);
    CHECK(cell(top2, 1, "index").get<long long>() == 1); // tie: lower index first

    CHECK(top_k(t, "pmax", 0).row_count() == 0);
    CHECK(top_k(t, "pmax", 100).row_count() == 4);

    Table asc = top_k(t, "pmax", 4, false);
    CHECK(cell(asc, 0, "pmax").get<double>() == 1.0);

    CHECK_THROWS_AS(top_k(t, "nope", 1), Error);
}

TEST_CASE("csv export follows RFC 4180") {
    Table t;
    t.columns = {{"index", ColumnType::Int},
                 {"name", ColumnType::String},
                 {"v", ColumnType::Float}};
    t.rows = {{1, "plain", 1.5},
              {2, "with,comma", json(nullptr)},
              {3, "say \"hi\"", -2.0}};
    std::string csv = to_csv(t);
    CHECK(csv ==
          "index,name,v\r\n"
          "1,plain,1.5\r\n"
          "2,\"with,comma\",\r\n"
          "3,\"say \"\"hi\"\"\",-2.0\r\n");
}

TEST_CASE("scalar fields survive the table round trip") {
    const Network& net = testutil::case39();
    TableSet ts = to_tables(net);
    const Table& bus = ts.components.at("bus");
    int idx_col = bus.require_col("index");
    int vmax_col = bus.require_col("vmax");
    for (size_t r = 0; r < bus.row_count(); ++r) {
        std::string id = std::to_string(bus.rows[r][idx_col].get<long long>());
        CHECK(bus.rows[r][vmax_col] ==
              net.components.at("bus").at(id).at("vmax"));
    }
}

TEST_CASE("agg function names parse") {
    CHECK(parse_agg_fn("mean") == AggFn::Mean);
    CHECK(parse_agg_fn("std") == AggFn::Std);
    CHECK(!parse_agg_fn("median").has_value());
}
