#include "gridplot.h"

#include <cstring>
#include <set>
#include <string>

#include "core/analysis.hpp"
#include "core/options.hpp"

using namespace gridplot;

struct gp_case {
    CaseData data;
};

struct gp_spec {
    PlotSpec spec;
};

namespace {

thread_local std::string g_last_error;

gp_status status_of(const Error& e) {
    switch (e.code()) {
    case ErrorCode::SyntaxError:
    case ErrorCode::RaggedMatrix:
        return GP_ERR_PARSE;
    case ErrorCode::UnknownComponentType:
    case ErrorCode::UnknownId:
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownColumn:
    case ErrorCode::PathNotFound:
    case ErrorCode::UnknownDataField:
        return GP_ERR_NOT_FOUND;
    case ErrorCode::DanglingBusRef:
    case ErrorCode::MissingEndpoint:
    case ErrorCode::NonNumericAggregate:
    case ErrorCode::InvalidArgument:
        return GP_ERR_INVALID_ARG;
    case ErrorCode::EmptyGraph:
        return GP_ERR_LAYOUT;
    case ErrorCode::IoError:
        return GP_ERR_IO;
    }
    return GP_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
gp_status guarded(Fn&& fn) {
    try {
        fn();
        return GP_OK;
    } catch (const Error& e) {
        g_last_error = std::string(e.code_name()) + ": " + e.what();
        return status_of(e);
    } catch (const json::exception& e) {
        g_last_error = std::string("json: ") + e.what();
        return GP_ERR_PARSE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GP_ERR_INTERNAL;
    }
}

gp_status require(bool ok, const char* what) {
    if (!ok) {
        g_last_error = std::string("invalid argument: ") + what;
        return GP_ERR_INVALID_ARG;
    }
    return GP_OK;
}

json parse_json_arg(const char* text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " is not valid JSON");
    return j;
}

json stats_to_json(const LayoutStats& s) {
    return {{"elapsed_seconds", s.elapsed_seconds},
            {"iterations_run", s.iterations_run},
            {"final_stress", s.final_stress}};
}

const Network& single_network(const CaseData& data, const char* op) {
    if (!std::holds_alternative<Network>(data))
        throw Error(ErrorCode::InvalidArgument,
                    std::string(op) + " expects a single network");
    return std::get<Network>(data);
}

} // namespace

extern "C" {

const char* gp_version(void) { return "0.1.0"; }

const char* gp_last_error(void) { return g_last_error.c_str(); }

void gp_string_free(char* s) { delete[] s; }

gp_status gp_case_load(const char* path, gp_case** out) {
    if (auto st = require(path && out, "gp_case_load")) return st;
    return guarded([&] { *out = new gp_case{load_case_file(path)}; });
}

gp_status gp_case_parse(const char* text, const char* format, gp_case** out) {
    if (auto st = require(text && format && out, "gp_case_parse")) return st;
    return guarded([&] { *out = new gp_case{parse_case(text, format)}; });
}

void gp_case_free(gp_case* c) { delete c; }

int gp_case_is_multinetwork(const gp_case* c) {
    return c && std::holds_alternative<MultiNetwork>(c->data) ? 1 : 0;
}

gp_status gp_case_to_json(const gp_case* c, char** out) {
    if (auto st = require(c && out, "gp_case_to_json")) return st;
    return guarded([&] { *out = dup_string(dump_canonical(case_to_json(c->data))); });
}

gp_status gp_case_validate(const gp_case* c, char** violations_json) {
    if (auto st = require(c && violations_json, "gp_case_validate")) return st;
    return guarded([&] {
        json out = json::array();
        auto collect = [&](const Network& net, const std::string& nw) {
            for (const auto& v : validate(net)) {
                json item = {{"kind", v.kind_name()},
                             {"component_type", v.ref.type},
                             {"id", v.ref.id},
                             {"detail", v.detail}};
                if (!nw.empty()) item["nw"] = nw;
                out.push_back(std::move(item));
            }
        };
        if (std::holds_alternative<Network>(c->data)) {
            collect(std::get<Network>(c->data), "");
        } else {
            for (const auto& [nw, net] : std::get<MultiNetwork>(c->data).networks)
                collect(net, nw);
        }
        *violations_json = dup_string(dump_canonical(out));
    });
}

gp_status gp_case_component_types(const gp_case* c, char** out) {
    if (auto st = require(c && out, "gp_case_component_types")) return st;
    return guarded([&] {
        std::set<std::string> types;
        if (std::holds_alternative<Network>(c->data)) {
            for (const auto& [t, recs] : std::get<Network>(c->data).components)
                types.insert(t);
        } else {
            for (const auto& [nw, net] : std::get<MultiNetwork>(c->data).networks)
                for (const auto& [t, recs] : net.components) types.insert(t);
        }
        *out = dup_string(dump_canonical(json(types)));
    });
}

gp_status gp_case_layout(const gp_case* c, const char* config_json,
                         gp_case** out, char** stats_json) {
    if (auto st = require(c && out, "gp_case_layout")) return st;
    return guarded([&] {
        LayoutConfig cfg = layout_config_from_json(
            config_json ? parse_json_arg(config_json, "layout config") : json());
        LayoutStats stats;
        if (std::holds_alternative<Network>(c->data)) {
            Network laid =
                layout_network(std::get<Network>(c->data), cfg, {}, &stats);
            *out = new gp_case{std::move(laid)};
        } else {
            // layout the union once, then persist per network
            const auto& mn = std::get<MultiNetwork>(c->data);
            Network u;
            u.metadata = mn.metadata;
            for (const auto& [nw, net] : mn.networks)
                for (const auto& [type, recs] : net.components)
                    for (const auto& [id, rec] : recs)
                        u.components[type].try_emplace(id, rec);
            Network laid = layout_network(u, cfg, {}, &stats);
            MultiNetwork result = mn;
            for (auto& [nw, net] : result.networks)
                for (auto& [type, recs] : net.components)
                    for (auto& [id, rec] : recs) {
                        const json* src = laid.find_component({type, id});
                        if (src && src->contains("xcoord_1")) {
                            rec["xcoord_1"] = (*src)["xcoord_1"];
                            rec["ycoord_1"] = (*src)["ycoord_1"];
                        }
                    }
            *out = new gp_case{std::move(result)};
        }
        if (stats_json) *stats_json = dup_string(dump_canonical(stats_to_json(stats)));
    });
}

gp_status gp_case_plot(const gp_case* c, const char* options_json,
                       gp_spec** out, char** stats_json) {
    if (auto st = require(c && out, "gp_case_plot")) return st;
    return guarded([&] {
        PlotOptions opts = plot_options_from_json(
            options_json ? parse_json_arg(options_json, "plot options") : json());
        PowerPlotResult res = powerplot(c->data, opts);
        *out = new gp_spec{std::move(res.spec)};
        if (stats_json)
            *stats_json = dup_string(dump_canonical(stats_to_json(res.layout_stats)));
    });
}

gp_status gp_spec_parse(const char* text, gp_spec** out) {
    if (auto st = require(text && out, "gp_spec_parse")) return st;
    return guarded([&] {
        *out = new gp_spec{PlotSpec{parse_json_arg(text, "spec")}};
    });
}

void gp_spec_free(gp_spec* s) { delete s; }

gp_status gp_spec_to_json(const gp_spec* s, char** out) {
    if (auto st = require(s && out, "gp_spec_to_json")) return st;
    return guarded([&] { *out = dup_string(dump_canonical(s->spec.tree)); });
}

gp_status gp_spec_to_html(const gp_spec* s, char** out) {
    if (auto st = require(s && out, "gp_spec_to_html")) return st;
    return guarded([&] { *out = dup_string(to_html(s->spec)); });
}

gp_status gp_spec_get(const gp_spec* s, const char* path_json, char** value_json) {
    if (auto st = require(s && path_json && value_json, "gp_spec_get")) return st;
    return guarded([&] {
        json value = spec_get(s->spec, parse_json_arg(path_json, "path"));
        *value_json = dup_string(dump_canonical(value));
    });
}

gp_status gp_spec_set(const gp_spec* s, const char* path_json,
                      const char* value_json, gp_spec** out) {
    if (auto st = require(s && path_json && value_json && out, "gp_spec_set"))
        return st;
    return guarded([&] {
        PlotSpec updated = spec_set(s->spec, parse_json_arg(path_json, "path"),
                                    parse_json_arg(value_json, "value"));
        *out = new gp_spec{std::move(updated)};
    });
}

gp_status gp_case_table_csv(const gp_case* c, const char* component_type,
                            char** out) {
    if (auto st = require(c && component_type && out, "gp_case_table_csv"))
        return st;
    return guarded([&] {
        TableSet ts = to_tables(c->data);
        if (std::string(component_type) == "metadata") {
            *out = dup_string(to_csv(ts.metadata));
            return;
        }
        auto it = ts.components.find(component_type);
        if (it == ts.components.end())
            throw Error(ErrorCode::UnknownComponentType,
                        std::string("unknown component type '") +
                            component_type + "'");
        *out = dup_string(to_csv(it->second));
    });
}

gp_status gp_case_group_aggregate_csv(const gp_case* c,
                                      const char* component_type,
                                      const char* by, const char* aggs_json,
                                      char** out) {
    if (auto st = require(c && component_type && by && aggs_json && out,
                          "gp_case_group_aggregate_csv"))
        return st;
    return guarded([&] {
        TableSet ts = to_tables(c->data);
        auto it = ts.components.find(component_type);
        if (it == ts.components.end())
            throw Error(ErrorCode::UnknownComponentType,
                        std::string("unknown component type '") +
                            component_type + "'");
        json aggs = parse_json_arg(aggs_json, "aggs");
        std::vector<std::pair<std::string, AggFn>> parsed;
        for (const auto& pair : aggs) {
            auto fn = parse_agg_fn(pair.at(1).get<std::string>());
            if (!fn)
                throw Error(ErrorCode::InvalidArgument,
                            "unknown aggregate '" +
                                pair.at(1).get<std::string>() + "'");
            parsed.emplace_back(pair.at(0).get<std::string>(), *fn);
        }
        *out = dup_string(to_csv(group_aggregate(it->second, by, parsed)));
    });
}

gp_status gp_case_top_k_csv(const gp_case* c, const char* component_type,
                            const char* column, int k, int descending,
                            char** out) {
    if (auto st = require(c && component_type && column && out,
                          "gp_case_top_k_csv"))
        return st;
    return guarded([&] {
        TableSet ts = to_tables(c->data);
        auto it = ts.components.find(component_type);
        if (it == ts.components.end())
            throw Error(ErrorCode::UnknownComponentType,
                        std::string("unknown component type '") +
                            component_type + "'");
        *out = dup_string(to_csv(top_k(it->second, column, k, descending != 0)));
    });
}

gp_status gp_degree_report(const gp_case* const* cases, size_t n_cases,
                           int as_chart, char** out_json) {
    if (auto st = require(cases && n_cases > 0 && out_json, "gp_degree_report"))
        return st;
    return guarded([&] {
        std::vector<Network> nets;
        for (size_t i = 0; i < n_cases; ++i) {
            if (!cases[i])
                throw Error(ErrorCode::InvalidArgument, "null case handle");
            nets.push_back(single_network(cases[i]->data, "degree report"));
        }
        DegreeReport report = degree_report(nets);
        json out = as_chart ? degree_report_chart(report).tree
                            : degree_report_json(report);
        *out_json = dup_string(dump_canonical(out));
    });
}

gp_status gp_case_voltage_stats_csv(const gp_case* c, char** out) {
    if (auto st = require(c && out, "gp_case_voltage_stats_csv")) return st;
    return guarded([&] {
        *out = dup_string(
            to_csv(voltage_stats(single_network(c->data, "voltage stats"))));
    });
}

gp_status gp_case_merge_solution(const gp_case* c, const char* solution_json,
                                 gp_case** out) {
    if (auto st = require(c && solution_json && out, "gp_case_merge_solution"))
        return st;
    return guarded([&] {
        Network net = single_network(c->data, "merge solution");
        merge_solution(net, parse_json_arg(solution_json, "solution"));
        *out = new gp_case{std::move(net)};
    });
}

} // extern "C"
