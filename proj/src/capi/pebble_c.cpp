#include "pebble/pebble.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "pebble/distribution.hpp"
#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"
#include "pebble/graph.hpp"
#include "pebble/solver.hpp"
#include "pebble/strategy.hpp"

struct pb_graph {
  pebble::Graph graph;
};

struct pb_trace {
  pebble::Trace trace;
};

struct pb_sweep {
  pebble::SweepReport report;
};

namespace {

thread_local std::string last_error;

pb_status to_status(pebble::ErrorCode code) {
  switch (code) {
    case pebble::ErrorCode::invalid_argument: return PB_INVALID_ARGUMENT;
    case pebble::ErrorCode::illegal_move: return PB_ILLEGAL_MOVE;
    case pebble::ErrorCode::resource_limit: return PB_RESOURCE_LIMIT;
    case pebble::ErrorCode::construction_failed: return PB_CONSTRUCTION_FAILED;
    case pebble::ErrorCode::overflow: return PB_OVERFLOW;
    case pebble::ErrorCode::internal: return PB_INTERNAL_ERROR;
  }
  return PB_INTERNAL_ERROR;
}

template <class F>
pb_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return PB_OK;
  } catch (const pebble::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PB_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PB_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown exception";
    return PB_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw pebble::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pebble::SolverBudget budget_of(const pb_budget* b) {
  if (b == nullptr) return pebble::SolverBudget::from_env();
  pebble::SolverBudget out;
  out.max_states = b->max_states;
  out.max_pebbles = b->max_pebbles;
  out.memo_cap = static_cast<std::size_t>(b->memo_cap);
  return out;
}

pebble::Distribution distribution_of(const uint32_t* counts, size_t n) {
  require(counts != nullptr || n == 0, "null counts");
  return pebble::Distribution(std::vector<pebble::Count>(counts, counts + n));
}

}  // namespace

extern "C" {

const char* pb_version(void) { return "1.0.0"; }

const char* pb_last_error(void) { return last_error.c_str(); }

const char* pb_status_name(pb_status status) {
  switch (status) {
    case PB_OK: return "ok";
    case PB_INVALID_ARGUMENT: return "invalid-argument";
    case PB_ILLEGAL_MOVE: return "illegal-move";
    case PB_RESOURCE_LIMIT: return "resource-limit";
    case PB_CONSTRUCTION_FAILED: return "construction-failed";
    case PB_OVERFLOW: return "overflow";
    case PB_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown";
}

void pb_string_free(char* s) { std::free(s); }

void pb_budget_default(pb_budget* out) {
  if (out == nullptr) return;
  const auto b = pebble::SolverBudget::from_env();
  out->max_states = b.max_states;
  out->max_pebbles = b.max_pebbles;
  out->memo_cap = b.memo_cap;
}

pb_status pb_graph_from_spec(const char* spec, pb_graph** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new pb_graph{pebble::parse_graph_spec(spec)};
  });
}

pb_status pb_graph_product(const pb_graph* g, const pb_graph* h, pb_graph** out) {
  return guarded([&] {
    require(g != nullptr && h != nullptr && out != nullptr, "null argument");
    *out = new pb_graph{pebble::cartesian_product(g->graph, h->graph)};
  });
}

pb_status pb_graph_clone(const pb_graph* g, pb_graph** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new pb_graph{g->graph};
  });
}

void pb_graph_free(pb_graph* g) { delete g; }

size_t pb_graph_vertex_count(const pb_graph* g) {
  return g == nullptr ? 0 : g->graph.vertex_count();
}

size_t pb_graph_edge_count(const pb_graph* g) {
  return g == nullptr ? 0 : g->graph.edge_count();
}

pb_status pb_graph_distance(const pb_graph* g, size_t u, size_t v, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(u < g->graph.vertex_count() && v < g->graph.vertex_count(),
            "vertex out of range");
    *out = g->graph.distance(u, v);
  });
}

pb_status pb_graph_describe(const pb_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = dup_string(g->graph.describe());
  });
}

size_t pb_graph_factor_count(const pb_graph* g) {
  return g == nullptr ? 0 : g->graph.factors().size();
}

pb_status pb_graph_factor(const pb_graph* g, size_t index, pb_graph** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(index < g->graph.factors().size(), "factor index out of range");
    *out = new pb_graph{g->graph.factors()[index]};
  });
}

int pb_graph_path_or_cycle(const pb_graph* g) {
  if (g == nullptr) return 0;
  if (g->graph.family() == pebble::Family::path) return 1;
  if (g->graph.family() == pebble::Family::cycle) return 2;
  return 0;
}

pb_status pb_parse_distribution(const char* text, uint32_t* counts, size_t cap,
                                size_t* len) {
  return guarded([&] {
    require(text != nullptr && len != nullptr, "null argument");
    const auto d = pebble::parse_distribution(text);
    *len = d.size();
    require(counts != nullptr && cap >= d.size(), "distribution buffer too small");
    for (size_t v = 0; v < d.size(); ++v) counts[v] = d[v];
  });
}

pb_status pb_sigma(const pb_graph* g, size_t v, uint64_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = pebble::sigma(g->graph, v);
  });
}

pb_status pb_goodness_bound(const pb_graph* g, uint64_t* value, size_t* key_vertex) {
  return guarded([&] {
    require(g != nullptr && value != nullptr, "null argument");
    const auto b = pebble::goodness_bound(g->graph);
    *value = b.value;
    if (key_vertex != nullptr) *key_vertex = b.key_vertex;
  });
}

pb_status pb_gamma_formula(const pb_graph* g, uint64_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = pebble::gamma_formula(g->graph);
  });
}

pb_status pb_decide(const pb_graph* g, const uint32_t* counts, size_t n,
                    const pb_budget* budget, int* coverable, uint64_t* states_explored,
                    pb_trace** trace) {
  return guarded([&] {
    require(g != nullptr && coverable != nullptr, "null argument");
    auto report =
        pebble::decide_coverable(g->graph, distribution_of(counts, n), budget_of(budget));
    *coverable = report.coverable ? 1 : 0;
    if (states_explored != nullptr) *states_explored = report.states_explored;
    if (trace != nullptr)
      *trace = report.trace ? new pb_trace{std::move(*report.trace)} : nullptr;
  });
}

pb_status pb_gamma_exact(const pb_graph* g, const pb_budget* budget, pb_gamma_result* out,
                         uint32_t* witness, size_t witness_len) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(witness == nullptr || witness_len >= g->graph.vertex_count(),
            "witness buffer too small");
    const auto r = pebble::gamma_exact(g->graph, budget_of(budget));
    out->gamma = r.gamma;
    out->lower_bound = r.lower_bound;
    out->good = r.good ? 1 : 0;
    out->has_key_vertex = r.key_vertex ? 1 : 0;
    out->key_vertex = r.key_vertex.value_or(0);
    out->distributions_checked = r.distributions_checked;
    if (witness != nullptr)
      for (size_t v = 0; v < r.witness.size(); ++v) witness[v] = r.witness[v];
  });
}

pb_status pb_check_product(const pb_graph* g, const pb_graph* h, const pb_budget* budget,
                           pb_product_result* out) {
  return guarded([&] {
    require(g != nullptr && h != nullptr && out != nullptr, "null argument");
    const auto r = pebble::check_product_equality(g->graph, h->graph, budget_of(budget));
    out->gamma_product = r.gamma_product;
    out->gamma_g = r.gamma_g;
    out->gamma_h = r.gamma_h;
    out->equal = r.equal ? 1 : 0;
    out->product_good = r.product_good ? 1 : 0;
    out->paired_key = r.paired_key;
    out->paired_sigma = r.paired_sigma;
    out->paired_sigma_matches = r.paired_sigma_matches ? 1 : 0;
    out->paired_witness_blocked = r.paired_witness_blocked ? 1 : 0;
  });
}

pb_status pb_sweep_goodness(size_t min_n, size_t max_n, int dedup, int allow_five,
                            const pb_budget* budget, pb_sweep** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    pebble::SweepOptions options;
    options.min_vertices = min_n;
    options.max_vertices = max_n;
    options.dedup = dedup != 0;
    options.allow_five = allow_five != 0;
    *out = new pb_sweep{pebble::sweep_goodness(options, budget_of(budget))};
  });
}

size_t pb_sweep_graph_count(const pb_sweep* s) {
  return s == nullptr ? 0 : s->report.entries.size();
}

size_t pb_sweep_counterexamples(const pb_sweep* s) {
  return s == nullptr ? 0 : s->report.counterexamples;
}

size_t pb_sweep_unknown(const pb_sweep* s) { return s == nullptr ? 0 : s->report.unknown; }

pb_status pb_sweep_tsv(const pb_sweep* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(pebble::sweep_to_tsv(s->report));
  });
}

void pb_sweep_free(pb_sweep* s) { delete s; }

pb_status pb_cover_product(const pb_graph* g, const pb_graph* h, const uint32_t* counts,
                           size_t n, uint64_t gamma_g, const pb_budget* budget,
                           pb_trace** out) {
  return guarded([&] {
    require(g != nullptr && h != nullptr && out != nullptr, "null argument");
    std::optional<std::uint64_t> q;
    if (gamma_g != 0) q = gamma_g;
    auto outcome = pebble::cover_product(distribution_of(counts, n), g->graph, h->graph,
                                         budget_of(budget), q);
    *out = new pb_trace{std::move(outcome.trace)};
  });
}

pb_status pb_fuzz_strategy(int cycle, size_t iterations, uint64_t seed, size_t max_vertices,
                           uint64_t max_q, int colors_up_to_q, pb_fuzz_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    pebble::StrategyFuzzConfig config;
    config.cycle = cycle != 0;
    config.iterations = iterations;
    config.seed = seed;
    config.max_vertices = max_vertices;
    config.max_q = max_q;
    config.colors_up_to_q = colors_up_to_q != 0;
    const auto r = pebble::fuzz_strategy(config);
    out->runs = r.runs;
    out->succeeded = r.succeeded;
    out->construction_failed = r.construction_failed;
    out->replay_failed = r.replay_failed;
    out->not_covered = r.not_covered;
  });
}

size_t pb_trace_move_count(const pb_trace* t) {
  return t == nullptr ? 0 : t->trace.moves.size();
}

pb_status pb_trace_to_json(const pb_trace* t, char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup_string(pebble::trace_to_json(t->trace));
  });
}

pb_status pb_trace_from_json(const char* json, pb_trace** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new pb_trace{pebble::trace_from_json(json)};
  });
}

pb_status pb_trace_verify(const pb_graph* g, const pb_trace* t, uint64_t q, int* q_covered) {
  return guarded([&] {
    require(g != nullptr && t != nullptr && q_covered != nullptr, "null argument");
    const auto final_state = pebble::replay(g->graph, t->trace);
    *q_covered = pebble::is_q_covered(final_state, q) ? 1 : 0;
  });
}

void pb_trace_free(pb_trace* t) { delete t; }

}  // extern "C"
