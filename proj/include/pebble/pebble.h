/*
 * C interface to the cover pebbling engine.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a pb_status; on
 * failure pb_last_error() describes the problem for the calling thread.
 * Strings returned through char** are released with pb_string_free.
 */
#ifndef PEBBLE_PEBBLE_H
#define PEBBLE_PEBBLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PB_API __declspec(dllexport)
#else
#  define PB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pb_status {
  PB_OK = 0,
  PB_INVALID_ARGUMENT = 1,
  PB_ILLEGAL_MOVE = 2,
  PB_RESOURCE_LIMIT = 3,
  PB_CONSTRUCTION_FAILED = 4,
  PB_OVERFLOW = 5,
  PB_INTERNAL_ERROR = 6
} pb_status;

typedef struct pb_graph pb_graph;
typedef struct pb_trace pb_trace;
typedef struct pb_sweep pb_sweep;

typedef struct pb_budget {
  uint64_t max_states;  /* per decision */
  uint64_t max_pebbles;
  uint64_t memo_cap;
} pb_budget;

typedef struct pb_gamma_result {
  uint64_t gamma;
  uint64_t lower_bound;
  int good;
  int has_key_vertex;
  size_t key_vertex;
  uint64_t distributions_checked;
} pb_gamma_result;

typedef struct pb_product_result {
  uint64_t gamma_product;
  uint64_t gamma_g;
  uint64_t gamma_h;
  int equal;
  int product_good;
  size_t paired_key;
  uint64_t paired_sigma;
  int paired_sigma_matches;
  int paired_witness_blocked;
} pb_product_result;

typedef struct pb_fuzz_result {
  size_t runs;
  size_t succeeded;
  size_t construction_failed;
  size_t replay_failed;
  size_t not_covered;
} pb_fuzz_result;

PB_API const char* pb_version(void);
PB_API const char* pb_last_error(void);
PB_API const char* pb_status_name(pb_status status);
PB_API void pb_string_free(char* s);

/* Defaults, then PEBBLE_MAX_STATES / PEBBLE_MAX_PEBBLES overrides. */
PB_API void pb_budget_default(pb_budget* out);

/* Graphs */
PB_API pb_status pb_graph_from_spec(const char* spec, pb_graph** out);
PB_API pb_status pb_graph_product(const pb_graph* g, const pb_graph* h, pb_graph** out);
PB_API pb_status pb_graph_clone(const pb_graph* g, pb_graph** out);
PB_API void pb_graph_free(pb_graph* g);
PB_API size_t pb_graph_vertex_count(const pb_graph* g);
PB_API size_t pb_graph_edge_count(const pb_graph* g);
PB_API pb_status pb_graph_distance(const pb_graph* g, size_t u, size_t v, uint32_t* out);
PB_API pb_status pb_graph_describe(const pb_graph* g, char** out);
/* Flattened factors of a product; 0 for non-products. */
PB_API size_t pb_graph_factor_count(const pb_graph* g);
PB_API pb_status pb_graph_factor(const pb_graph* g, size_t index, pb_graph** out);
/* 1 for path, 2 for cycle, 0 otherwise. */
PB_API int pb_graph_path_or_cycle(const pb_graph* g);

/* Parses "3,0,1" into counts; *len receives the vertex count even when
 * cap is too small (PB_INVALID_ARGUMENT in that case). */
PB_API pb_status pb_parse_distribution(const char* text, uint32_t* counts, size_t cap,
                                       size_t* len);

/* Formulas */
PB_API pb_status pb_sigma(const pb_graph* g, size_t v, uint64_t* out);
PB_API pb_status pb_goodness_bound(const pb_graph* g, uint64_t* value, size_t* key_vertex);
PB_API pb_status pb_gamma_formula(const pb_graph* g, uint64_t* out);

/* Solver. `budget` may be NULL for pb_budget_default. */
PB_API pb_status pb_decide(const pb_graph* g, const uint32_t* counts, size_t n,
                           const pb_budget* budget, int* coverable,
                           uint64_t* states_explored, pb_trace** trace);
/* witness receives vertex_count entries when non-NULL. */
PB_API pb_status pb_gamma_exact(const pb_graph* g, const pb_budget* budget,
                                pb_gamma_result* out, uint32_t* witness,
                                size_t witness_len);
PB_API pb_status pb_check_product(const pb_graph* g, const pb_graph* h,
                                  const pb_budget* budget, pb_product_result* out);

/* Goodness sweep over connected labeled graphs with min_n..max_n vertices. */
PB_API pb_status pb_sweep_goodness(size_t min_n, size_t max_n, int dedup,
                                   int allow_five, const pb_budget* budget,
                                   pb_sweep** out);
PB_API size_t pb_sweep_graph_count(const pb_sweep* s);
PB_API size_t pb_sweep_counterexamples(const pb_sweep* s);
PB_API size_t pb_sweep_unknown(const pb_sweep* s);
PB_API pb_status pb_sweep_tsv(const pb_sweep* s, char** out);
PB_API void pb_sweep_free(pb_sweep* s);

/* Strategy: covers G x H where H is a path or cycle. gamma_g = 0 lets the
 * engine determine gamma(G). */
PB_API pb_status pb_cover_product(const pb_graph* g, const pb_graph* h,
                                  const uint32_t* counts, size_t n, uint64_t gamma_g,
                                  const pb_budget* budget, pb_trace** out);
PB_API pb_status pb_fuzz_strategy(int cycle, size_t iterations, uint64_t seed,
                                  size_t max_vertices, uint64_t max_q,
                                  int colors_up_to_q, pb_fuzz_result* out);

/* Traces */
PB_API size_t pb_trace_move_count(const pb_trace* t);
PB_API pb_status pb_trace_to_json(const pb_trace* t, char** out);
PB_API pb_status pb_trace_from_json(const char* json, pb_trace** out);
/* Replays on g; *q_covered reports whether every vertex ends with >= q. */
PB_API pb_status pb_trace_verify(const pb_graph* g, const pb_trace* t, uint64_t q,
                                 int* q_covered);
PB_API void pb_trace_free(pb_trace* t);

#ifdef __cplusplus
}
#endif

#endif /* PEBBLE_PEBBLE_H */
