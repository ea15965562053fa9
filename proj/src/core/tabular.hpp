#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace gridplot {

enum class ColumnType { Float, Int, String, Bool, Null };

/// Column-typed table with null-able cells (cells are scalar JSON values).
struct Table {
    std::vector<std::pair<std::string, ColumnType>> columns;
    std::vector<std::vector<json>> rows;

    int col_index(const std::string& name) const; // -1 when absent
    int require_col(const std::string& name) const;
    size_t row_count() const { return rows.size(); }
};

struct TableSet {
    Table metadata;
    std::map<std::string, Table> components;
};

TableSet to_tables(const Network& net);
TableSet to_tables(const MultiNetwork& mn);
TableSet to_tables(const CaseData& data);

enum class AggFn { Count, Mean, Std, Min, Max };

std::optional<AggFn> parse_agg_fn(const std::string& name);
const char* agg_fn_name(AggFn fn);

/// One output row per distinct (non-null) by-value, ascending. "count" is the
/// group row count; value aggregates skip nulls, all-null groups yield null.
/// Std is the sample (n-1) standard deviation.
Table group_aggregate(const Table& t, const std::string& by,
                      const std::vector<std::pair<std::string, AggFn>>& aggs);

/// k rows sorted by col (descending by default), ties by ascending "index".
Table top_k(const Table& t, const std::string& col, int k,
            bool descending = true);

/// RFC 4180 CSV; nulls are empty fields.
std::string to_csv(const Table& t);

/// Rows as an array of JSON objects (column name -> cell).
json table_rows_json(const Table& t);

} // namespace gridplot
