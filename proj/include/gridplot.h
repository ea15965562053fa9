/* gridplot — power grid visualization and analysis library.
 *
 * C API over the C++ core: opaque handles, integer status codes, and
 * UTF-8 strings. Every char* returned through an out-parameter is owned
 * by the caller and must be released with gp_string_free(). On any
 * non-zero status, gp_last_error() describes the failure (thread-local).
 */
#ifndef GRIDPLOT_H
#define GRIDPLOT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
    GP_OK = 0,
    GP_ERR_PARSE = 1,       /* malformed case file / JSON */
    GP_ERR_INVALID_ARG = 2, /* bad option value or handle */
    GP_ERR_NOT_FOUND = 3,   /* unknown component, column, or path */
    GP_ERR_LAYOUT = 4,      /* layout computation failed */
    GP_ERR_IO = 5,          /* file system failure */
    GP_ERR_INTERNAL = 6
} gp_status;

typedef struct gp_case gp_case; /* a Network or MultiNetwork */
typedef struct gp_spec gp_spec; /* a Vega-Lite plot specification */

const char* gp_version(void);

/* Last error message for the current thread; valid until the next call. */
const char* gp_last_error(void);

void gp_string_free(char* s);

/* ---- cases ---- */

/* Loads a .m (MatPower) or .json case file. */
gp_status gp_case_load(const char* path, gp_case** out);
/* format: "matpower" or "json". */
gp_status gp_case_parse(const char* text, const char* format, gp_case** out);
void gp_case_free(gp_case* c);

/* 1 when the case is a multi-network, 0 otherwise. */
int gp_case_is_multinetwork(const gp_case* c);

/* Canonical case JSON: 2-space indent, lexicographically sorted keys. */
gp_status gp_case_to_json(const gp_case* c, char** out);

/* JSON array of violations; empty array means the case is well formed. */
gp_status gp_case_validate(const gp_case* c, char** violations_json);

/* JSON array of component type names. */
gp_status gp_case_component_types(const gp_case* c, char** out);

/* ---- layout ----
 * config_json keys (all optional): algorithm ("kamada_kawai"|"spring"|
 * "sfdp"|"spectral"|"shell"|"grid"), iterations, C, K, spring_k, seed,
 * fixed, tol, max_sweeps. */
gp_status gp_case_layout(const gp_case* c, const char* config_json,
                         gp_case** out, char** stats_json);

/* ---- plotting ----
 * options_json keys (all optional): width, height, node_components,
 * connected_components, edge_components, fixed, layout {...}, styles
 * {type: {size, color, data, data_type, show_flow}}. */
gp_status gp_case_plot(const gp_case* c, const char* options_json,
                       gp_spec** out, char** stats_json);

gp_status gp_spec_parse(const char* text, gp_spec** out);
void gp_spec_free(gp_spec* s);
gp_status gp_spec_to_json(const gp_spec* s, char** out);
gp_status gp_spec_to_html(const gp_spec* s, char** out);

/* path_json: JSON array of object keys / array indices, e.g.
 * ["layer",1,"encoding","color","scale","domain"]. */
gp_status gp_spec_get(const gp_spec* s, const char* path_json, char** value_json);
gp_status gp_spec_set(const gp_spec* s, const char* path_json,
                      const char* value_json, gp_spec** out);

/* ---- tables and analysis ---- */

/* RFC 4180 CSV of one component table ("metadata" for the metadata table). */
gp_status gp_case_table_csv(const gp_case* c, const char* component_type,
                            char** out);

/* aggs_json: array of [column, fn] pairs, fn in
 * "count"|"mean"|"std"|"min"|"max". */
gp_status gp_case_group_aggregate_csv(const gp_case* c,
                                      const char* component_type,
                                      const char* by, const char* aggs_json,
                                      char** out);

gp_status gp_case_top_k_csv(const gp_case* c, const char* component_type,
                            const char* column, int k, int descending,
                            char** out);

/* Bus-degree report over one or more cases (bus-only branch graphs).
 * as_chart != 0 emits a Vega-Lite bar chart spec instead of the report. */
gp_status gp_degree_report(const gp_case* const* cases, size_t n_cases,
                           int as_chart, char** out_json);

/* Voltage magnitude metrics (count/mean/std/min/max) grouped by base_kv,
 * as CSV. */
gp_status gp_case_voltage_stats_csv(const gp_case* c, char** out);

/* Overwrite record fields from a solution JSON tree
 * (component-type -> id -> fields). */
gp_status gp_case_merge_solution(const gp_case* c, const char* solution_json,
                                 gp_case** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GRIDPLOT_H */
