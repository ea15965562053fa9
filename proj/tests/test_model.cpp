#include <doctest.h>

#include "core/model.hpp"
#include "helpers.hpp"

using namespace gridplot;
using testutil::case1354;
using testutil::case39;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("get_component resolves by type and id") {
    const json& bus = get_component(case1354(), {"bus", "1001"});
    CHECK(bus.at("index").get<long long>() == 1001);

    Network empty;
    CHECK(code_of([&] { get_component(empty, {"bus", "1"}); }) ==
          ErrorCode::UnknownComponentType);
    CHECK(code_of([&] { get_component(case39(), {"gen", "99"}); }) ==
          ErrorCode::UnknownId);
}

TEST_CASE("validate accepts the bundled fixtures") {
    CHECK(validate(case39()).empty());
    CHECK(validate(case1354()).empty());
}

TEST_CASE("validate reports dangling bus references") {
    Network net = testutil::make_network(2, {{1, 2}});
    net.components["gen"]["1"] = {
        {"index", 1}, {"gen_bus", 999}, {"gen_status", 1}};
    auto violations = validate(net);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == Violation::Kind::DanglingBusRef);
    CHECK(violations[0].ref == ComponentRef{"gen", "1"});
}

TEST_CASE("validate reports bad status values") {
    Network net = testutil::make_network(2, {{1, 2}});
    net.components["branch"]["1"]["br_status"] = 2;
    auto violations = validate(net);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == Violation::Kind::BadStatus);
    CHECK(violations[0].ref == ComponentRef{"branch", "1"});
}

TEST_CASE("validate reports index mismatches and non-finite numbers") {
    Network net = testutil::make_network(1, {});
    net.components["bus"]["1"]["index"] = 7;
    auto v1 = validate(net);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].kind == Violation::Kind::IndexMismatch);

    Network net2 = testutil::make_network(1, {});
    net2.components["bus"]["1"]["vm"] =
        std::numeric_limits<double>::quiet_NaN();
    auto v2 = validate(net2);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].kind == Violation::Kind::NonFiniteNumber);
}

TEST_CASE("JSON round-trip is structurally identical") {
    json j = case_to_json(CaseData{case39()});
    CaseData reparsed = case_from_json(j);
    CHECK(case_to_json(reparsed) == j);
    // and the canonical dump is bit-stable
    CHECK(dump_canonical(case_to_json(reparsed)) == dump_canonical(j));
}

TEST_CASE("multi-network detection requires nw plus the flag") {
    json nw_net = {{"baseMVA", 100.0},
                   {"bus", {{"1", {{"index", 1}}}}}};
    json mn = {{"multinetwork", true},
               {"name", "mn"},
               {"nw", {{"1", nw_net}, {"2", nw_net}}}};
    CaseData data = case_from_json(mn);
    REQUIRE(std::holds_alternative<MultiNetwork>(data));
    CHECK(std::get<MultiNetwork>(data).networks.size() == 2);

    // without the flag the "nw" object is not treated as a multi-network
    json plain = {{"baseMVA", 100.0}, {"bus", {{"1", {{"index", 1}}}}}};
    CHECK(std::holds_alternative<Network>(case_from_json(plain)));
}

TEST_CASE("baseMVA is normalized to base_mva metadata") {
    json j = {{"baseMVA", 100.0}, {"bus", {{"1", {{"index", 1}}}}}};
    Network net = network_from_json(j);
    CHECK(net.metadata.at("base_mva").get<double>() == 100.0);
}

TEST_CASE("custom component types pass through untouched") {
    json j = {{"base_mva", 100.0},
              {"bus", {{"1", {{"index", 1}}}}},
              {"hydro",
               {{"1", {{"index", 1}, {"hydro_bus", 1}, {"rating", 4.5}}}}}};
    Network net = network_from_json(j);
    REQUIRE(net.components.count("hydro") == 1);
    CHECK(get_component(net, {"hydro", "1"}).at("rating").get<double>() ==
          4.5);
    CHECK(validate(net).empty());
    CHECK(bus_ref_field("hydro", net.components["hydro"]["1"]) ==
          std::string("hydro_bus"));
}

TEST_CASE("id_less orders decimal id strings numerically") {
    CHECK(id_less("2", "10"));
    CHECK(!id_less("10", "2"));
    CHECK(id_less("99", "1001"));
    CHECK(!id_less("5", "5"));
}

TEST_CASE("status_field and is_active honor the per-type conventions") {
    json branch = {{"index", 1}, {"br_status", 0}};
    CHECK(!is_active(branch));
    json gen = {{"index", 1}, {"gen_status", 1}};
    CHECK(is_active(gen));
    json bare = {{"index", 1}};
    CHECK(is_active(bare)); // no status field means active
}
