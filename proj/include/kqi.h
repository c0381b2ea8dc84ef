/* C interface to the KQI citation-network toolkit.
 *
 * Conventions: every function returns a kqi_status (KQI_OK == 0); results
 * come back through out-parameters.  Handles are opaque and must be released
 * with the matching _free call.  kqi_last_error() returns a thread-local
 * message for the most recent failure.  Strings returned through const char**
 * stay valid until the handle that produced them is freed.  Output paths
 * accept "-" for standard output.
 */
#ifndef KQI_H
#define KQI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kqi_graph kqi_graph;
typedef struct kqi_result kqi_result;   /* volumes + per-node KQI */
typedef struct kqi_agg kqi_agg;         /* group aggregation */
typedef struct kqi_vein kqi_vein;
typedef struct kqi_series kqi_series;   /* yearly or per-step growth series */

typedef enum kqi_status {
  KQI_OK = 0,
  KQI_E_IO,
  KQI_E_MALFORMED_LINE,
  KQI_E_DUPLICATE_EDGE,
  KQI_E_CYCLE,
  KQI_E_ALREADY_AUGMENTED,
  KQI_E_NOT_AUGMENTED,
  KQI_E_MISSING_YEAR,
  KQI_E_ZERO_IN_STRENGTH,
  KQI_E_MISMATCHED_TABLE,
  KQI_E_UNKNOWN_GROUP_KIND,
  KQI_E_UNKNOWN_NODE,
  KQI_E_DEGENERATE_INPUT,
  KQI_E_TOO_FEW_POINTS,
  KQI_E_ALL_ZERO,
  KQI_E_NONCONVERGENCE,
  KQI_E_KEY_MISMATCH,
  KQI_E_EMPTY_SELECTION,
  KQI_E_FRAGMENT_EXPLOSION,
  KQI_E_VALIDITY_GUARD,
  KQI_E_INVALID_ARGUMENT,
  KQI_E_INTERNAL
} kqi_status;

const char* kqi_status_name(kqi_status s);
const char* kqi_last_error(void);
const char* kqi_version(void);

/* ---- graphs ------------------------------------------------------------ */

/* Edge file: citing<TAB>cited[<TAB>weight], '#' comments.  Node file
 * (optional, pass NULL): id<TAB>year-or-dash[<TAB>kind=key;key...]. */
kqi_status kqi_graph_load(const char* edge_path, const char* node_path, kqi_graph** out);
void kqi_graph_free(kqi_graph* g);

kqi_status kqi_graph_augment(const kqi_graph* g, kqi_graph** out);
kqi_status kqi_graph_decay(const kqi_graph* g, double lambda, const long long* reference_year,
                           kqi_graph** out);
kqi_status kqi_graph_snapshot(const kqi_graph* g, long long year, kqi_graph** out);
kqi_status kqi_graph_save(const kqi_graph* g, const char* edge_path, const char* node_path);

size_t kqi_graph_node_count(const kqi_graph* g);      /* super root excluded */
size_t kqi_graph_edge_count(const kqi_graph* g);
double kqi_graph_total_weight(const kqi_graph* g);
int kqi_graph_is_augmented(const kqi_graph* g);
/* i-th real node in ascending id order. */
kqi_status kqi_graph_node_id(const kqi_graph* g, size_t i, const char** id);
kqi_status kqi_graph_node_year(const kqi_graph* g, size_t i, long long* year, int* has_year);

/* ---- KQI --------------------------------------------------------------- */

kqi_status kqi_compute(const kqi_graph* g, int threads, kqi_result** out);
void kqi_result_free(kqi_result* r);
size_t kqi_result_size(const kqi_result* r);          /* real nodes only */
double kqi_result_total(const kqi_result* r);
kqi_status kqi_result_row(const kqi_result* r, size_t i, const char** id, double* kqi,
                          double* volume, double* in_strength, double* out_strength);
kqi_status kqi_result_lookup(const kqi_result* r, const char* id, double* kqi, double* volume);
/* format: "csv" or "json" */
kqi_status kqi_result_export(const kqi_result* r, const char* path, const char* format);

/* Fragment-decomposition oracle; exponential, for validation only. */
kqi_status kqi_oracle(const kqi_graph* g, const char* node_id, double* out);

/* ---- aggregation -------------------------------------------------------- */

/* kind: author | affiliation | country | discipline */
kqi_status kqi_aggregate(const kqi_result* r, const char* kind, int first_author_only,
                         kqi_agg** out);
void kqi_agg_free(kqi_agg* a);
size_t kqi_agg_size(const kqi_agg* a);
size_t kqi_agg_skipped(const kqi_agg* a);
kqi_status kqi_agg_row(const kqi_agg* a, size_t i, const char** key, double* kqi_sum,
                       long long* paper_count);
kqi_status kqi_agg_export_csv(const kqi_agg* a, const char* path, size_t top_n);

/* ---- veins -------------------------------------------------------------- */

/* Select either the top fraction (pass ids == NULL) or an explicit id list
 * (pass top_fraction < 0). */
kqi_status kqi_vein_extract(const kqi_result* r, double top_fraction, const char* const* ids,
                            size_t id_count, int max_depth, int complete_level, kqi_vein** out);
void kqi_vein_free(kqi_vein* v);
size_t kqi_vein_node_count(const kqi_vein* v);
size_t kqi_vein_edge_count(const kqi_vein* v);
double kqi_vein_covered_share(const kqi_vein* v);
kqi_status kqi_vein_node(const kqi_vein* v, size_t i, const char** id);
kqi_status kqi_vein_edge(const kqi_vein* v, size_t i, const char** ancestor,
                         const char** descendant);
/* format: "dot" or "csv" */
kqi_status kqi_vein_export(const kqi_vein* v, const char* path, const char* format);

/* ---- growth and booms ---------------------------------------------------- */

kqi_status kqi_growth_series(const kqi_graph* g, long long from_year, long long to_year,
                             const double* decay_lambda, int threads, kqi_series** out);
void kqi_series_free(kqi_series* s);
size_t kqi_series_size(const kqi_series* s);
kqi_status kqi_series_point(const kqi_series* s, size_t i, long long* year, double* total_kqi,
                            size_t* nodes, double* mean_in_strength);
/* Continuum-model total for simulated series; errors on yearly graph series,
 * which carry no such column. */
kqi_status kqi_series_approx(const kqi_series* s, size_t i, double* approx_kqi);
kqi_status kqi_series_export_csv(const kqi_series* s, const char* path);

typedef struct kqi_boom {
  double slope, intercept, rss, r2;
  int boomed;
  double rss_critical;
  double a;                 /* (m-1)/ln(n) at the final year; NaN if n < 2 */
  long long threshold_year; /* valid when has_threshold_year */
  int has_threshold_year;
} kqi_boom;

/* scale: "minmax100" or "none" */
kqi_status kqi_detect_boom(const kqi_series* s, double rss_critical, const char* scale,
                           int use_increments, kqi_boom* out);

kqi_status kqi_fit_linear(const double* xs, const double* ys, size_t n, double* slope,
                          double* intercept, double* rss, double* r2);

typedef struct kqi_pareto {
  double p_star;
  double share_at_p_star;
} kqi_pareto;

kqi_status kqi_pareto_split(const kqi_result* r, kqi_pareto* out);
/* CSV of the cumulative share curve: fraction,share */
kqi_status kqi_pareto_export_csv(const kqi_result* r, const char* path);

/* ---- simulation ---------------------------------------------------------- */

/* schedule: standard | accelerated | decelerated | custom.  For custom,
 * arrivals lists per-step node counts (length == steps); otherwise pass
 * target_nodes and arrivals == NULL. */
kqi_status kqi_ba_generate(int m, const char* schedule, long long target_nodes, int steps,
                           const long long* arrivals, uint64_t seed, kqi_graph** out);
/* Same growth run, one series point per step (year slot holds the step). */
kqi_status kqi_ba_series(int m, const char* schedule, long long target_nodes, int steps,
                         const long long* arrivals, uint64_t seed, kqi_series** out);

kqi_status kqi_percolate(const kqi_graph* g, int a, double seed_fraction, uint64_t rng_seed,
                         double* active_fraction, int* rounds);

typedef struct kqi_analytic {
  double degree;
  double contain_proportion;
  double volume;
  double kqi_approx;
} kqi_analytic;

kqi_status kqi_analytic_predictions(int m, double r, double w_ti, kqi_analytic* out);

/* ---- baselines ----------------------------------------------------------- */

/* direction: "citing-to-cited" (default PageRank on citations) or
 * "cited-to-citing".  scores must hold kqi_graph_node_count(g) doubles and is
 * filled in ascending id order (super root, if any, is skipped). */
kqi_status kqi_pagerank(const kqi_graph* g, double damping, double tol, int max_iter,
                        const char* direction, double* scores, size_t cap);
kqi_status kqi_h_index(const long long* citation_counts, size_t n, int* out);
kqi_status kqi_spearman(const double* a, const double* b, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* KQI_H */
