#include "tabular.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gridplot {

int Table::col_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].first == name) return static_cast<int>(i);
    return -1;
}

int Table::require_col(const std::string& name) const {
    int i = col_index(name);
    if (i < 0)
        throw Error(ErrorCode::UnknownColumn, "no column '" + name + "'");
    return i;
}

namespace {

json cell_of(const json& value) {
    if (value.is_structured()) return value.dump(); // canonical JSON string
    return value;
}

ColumnType infer_type(const std::vector<std::vector<json>>& rows, size_t col) {
    bool saw_float = false, saw_int = false, saw_bool = false, saw_str = false;
    for (const auto& row : rows) {
        const json& v = row[col];
        if (v.is_null()) continue;
        if (v.is_boolean()) saw_bool = true;
        else if (v.is_number_integer() || v.is_number_unsigned()) saw_int = true;
        else if (v.is_number()) saw_float = true;
        else saw_str = true;
    }
    if (saw_str) return ColumnType::String;
    if (saw_float) return ColumnType::Float;
    if (saw_int) return saw_bool ? ColumnType::String : ColumnType::Int;
    if (saw_bool) return ColumnType::Bool;
    return ColumnType::Null;
}

Table component_table(const std::string& type,
                      const std::vector<std::tuple<std::string, std::string,
                                                   const json*>>& records) {
    // records: (nw, id, record), already in output row order
    bool multinet = !records.empty() && !std::get<0>(records.front()).empty();
    std::set<std::string> fields;
    for (const auto& [nw, id, rec] : records)
        for (auto it = rec->begin(); it != rec->end(); ++it)
            fields.insert(it.key());
    fields.erase("index");

    std::vector<std::string> names;
    if (multinet) names.push_back("nw");
    names.push_back("index");
    names.push_back("ComponentType");
    for (const auto& f : fields) names.push_back(f);

    Table t;
    for (const auto& [nw, id, rec] : records) {
        std::vector<json> row;
        row.reserve(names.size());
        if (multinet) row.push_back(nw);
        row.push_back((*rec)["index"]);
        row.push_back(type);
        for (const auto& f : fields)
            row.push_back(rec->contains(f) ? cell_of((*rec)[f]) : json());
        t.rows.push_back(std::move(row));
    }
    for (size_t i = 0; i < names.size(); ++i)
        t.columns.emplace_back(names[i], ColumnType::Null);
    for (size_t i = 0; i < names.size(); ++i)
        t.columns[i].second = infer_type(t.rows, i);
    return t;
}

Table metadata_table(const json& metadata) {
    Table t;
    std::vector<json> row;
    for (auto it = metadata.begin(); it != metadata.end(); ++it) {
        t.columns.emplace_back(it.key(), ColumnType::Null);
        row.push_back(cell_of(it.value()));
    }
    t.rows.push_back(std::move(row));
    for (size_t i = 0; i < t.columns.size(); ++i)
        t.columns[i].second = infer_type(t.rows, i);
    return t;
}

std::vector<std::string> ids_by_numeric_order(
    const std::map<std::string, json>& recs) {
    std::vector<std::string> ids;
    for (const auto& [id, rec] : recs) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), id_less);
    return ids;
}

} // namespace

TableSet to_tables(const Network& net) {
    TableSet ts;
    ts.metadata = metadata_table(net.metadata);
    for (const auto& [type, recs] : net.components) {
        std::vector<std::tuple<std::string, std::string, const json*>> ordered;
        for (const auto& id : ids_by_numeric_order(recs))
            ordered.emplace_back("", id, &recs.at(id));
        ts.components[type] = component_table(type, ordered);
    }
    return ts;
}

TableSet to_tables(const MultiNetwork& mn) {
    TableSet ts;
    ts.metadata = metadata_table(mn.metadata);
    std::set<std::string> types;
    for (const auto& [nw, net] : mn.networks)
        for (const auto& [type, recs] : net.components) types.insert(type);

    std::vector<std::string> nws;
    for (const auto& [nw, net] : mn.networks) nws.push_back(nw);
    std::sort(nws.begin(), nws.end(), id_less);

    for (const auto& type : types) {
        // row order: ascending numeric id, then ascending nw
        std::set<std::string> all_ids;
        for (const auto& nw : nws) {
            const auto& net = mn.networks.at(nw);
            auto it = net.components.find(type);
            if (it == net.components.end()) continue;
            for (const auto& [id, rec] : it->second) all_ids.insert(id);
        }
        std::vector<std::string> ids(all_ids.begin(), all_ids.end());
        std::sort(ids.begin(), ids.end(), id_less);

        std::vector<std::tuple<std::string, std::string, const json*>> ordered;
        for (const auto& id : ids)
            for (const auto& nw : nws) {
                const auto& net = mn.networks.at(nw);
                auto it = net.components.find(type);
                if (it == net.components.end()) continue;
                auto r = it->second.find(id);
                if (r != it->second.end())
                    ordered.emplace_back(nw, id, &r->second);
            }
        ts.components[type] = component_table(type, ordered);
    }
    return ts;
}

TableSet to_tables(const CaseData& data) {
    if (std::holds_alternative<Network>(data))
        return to_tables(std::get<Network>(data));
    return to_tables(std::get<MultiNetwork>(data));
}

std::optional<AggFn> parse_agg_fn(const std::string& name) {
    if (name == "count") return AggFn::Count;
    if (name == "mean") return AggFn::Mean;
    if (name == "std") return AggFn::Std;
    if (name == "min") return AggFn::Min;
    if (name == "max") return AggFn::Max;
    return std::nullopt;
}

const char* agg_fn_name(AggFn fn) {
    switch (fn) {
    case AggFn::Count: return "count";
    case AggFn::Mean: return "mean";
    case AggFn::Std: return "std";
    case AggFn::Min: return "min";
    case AggFn::Max: return "max";
    }
    return "unknown";
}

namespace {

bool json_value_less(const json& a, const json& b) {
    if (a.is_number() && b.is_number())
        return a.get<double>() < b.get<double>();
    if (a.type() != b.type()) return a.type() < b.type();
    if (a.is_string()) return a.get<std::string>() < b.get<std::string>();
    return a.dump() < b.dump();
}

} // namespace

Table group_aggregate(const Table& t, const std::string& by,
                      const std::vector<std::pair<std::string, AggFn>>& aggs) {
    int by_col = t.require_col(by);
    std::vector<int> agg_cols;
    for (const auto& [col, fn] : aggs) {
        int c = t.require_col(col);
        auto ctype = t.columns[c].second;
        if (fn != AggFn::Count && ctype != ColumnType::Float &&
            ctype != ColumnType::Int && ctype != ColumnType::Null)
            throw Error(ErrorCode::NonNumericAggregate,
                        "column '" + col + "' is not numeric");
        agg_cols.push_back(c);
    }

    // group rows by the by-value (null by-values excluded)
    std::vector<json> keys;
    std::vector<std::vector<size_t>> groups;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const json& key = t.rows[r][by_col];
        if (key.is_null()) continue;
        size_t gi = 0;
        for (; gi < keys.size(); ++gi)
            if (keys[gi] == key) break;
        if (gi == keys.size()) {
            keys.push_back(key);
            groups.emplace_back();
        }
        groups[gi].push_back(r);
    }
    std::vector<size_t> order(keys.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return json_value_less(keys[a], keys[b]);
    });

    Table out;
    out.columns.emplace_back(by, t.columns[by_col].second);
    for (size_t a = 0; a < aggs.size(); ++a) {
        const auto& [col, fn] = aggs[a];
        std::string name =
            fn == AggFn::Count ? "count" : col + "_" + agg_fn_name(fn);
        out.columns.emplace_back(
            name, fn == AggFn::Count ? ColumnType::Int : ColumnType::Float);
    }

    for (size_t oi : order) {
        std::vector<json> row{keys[oi]};
        for (size_t a = 0; a < aggs.size(); ++a) {
            AggFn fn = aggs[a].second;
            if (fn == AggFn::Count) {
                row.push_back(static_cast<long long>(groups[oi].size()));
                continue;
            }
            std::vector<double> vals;
            for (size_t r : groups[oi]) {
                const json& v = t.rows[r][agg_cols[a]];
                if (!v.is_null()) vals.push_back(v.get<double>());
            }
            if (vals.empty() || (fn == AggFn::Std && vals.size() < 2)) {
                row.push_back(json());
                continue;
            }
            double result = 0.0;
            switch (fn) {
            case AggFn::Mean: {
                for (double v : vals) result += v;
                result /= static_cast<double>(vals.size());
                break;
            }
            case AggFn::Std: {
                double mean = 0.0;
                for (double v : vals) mean += v;
                mean /= static_cast<double>(vals.size());
                double ss = 0.0;
                for (double v : vals) ss += (v - mean) * (v - mean);
                result = std::sqrt(ss / static_cast<double>(vals.size() - 1));
                break;
            }
            case AggFn::Min:
                result = *std::min_element(vals.begin(), vals.end());
                break;
            case AggFn::Max:
                result = *std::max_element(vals.begin(), vals.end());
                break;
            case AggFn::Count: break; // handled above
            }
            row.push_back(result);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

Table top_k(const Table& t, const std::string& col, int k, bool descending) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
    int c = t.require_col(col);
    int index_col = t.col_index("index");

    std::vector<size_t> order(t.rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const json& va = t.rows[a][c];
        const json& vb = t.rows[b][c];
        if (va.is_null() != vb.is_null()) return vb.is_null(); // nulls last
        if (!va.is_null() && va != vb)
            return descending ? json_value_less(vb, va)
                              : json_value_less(va, vb);
        if (index_col >= 0)
            return json_value_less(t.rows[a][index_col], t.rows[b][index_col]);
        return false;
    });

    Table out;
    out.columns = t.columns;
    size_t take = std::min<size_t>(static_cast<size_t>(k), order.size());
    for (size_t i = 0; i < take; ++i) out.rows.push_back(t.rows[order[i]]);
    return out;
}

namespace {

std::string csv_escape(const json& cell) {
    if (cell.is_null()) return "";
    std::string s;
    if (cell.is_string()) s = cell.get<std::string>();
    else s = cell.dump();
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

} // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(json(t.columns[i].first));
    }
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

json table_rows_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (size_t i = 0; i < t.columns.size(); ++i)
            obj[t.columns[i].first] = row[i];
        rows.push_back(std::move(obj));
    }
    return rows;
}

} // namespace gridplot
