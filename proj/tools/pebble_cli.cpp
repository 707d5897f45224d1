// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pebble/pebble.h"

namespace {

enum Exit : int { ok = 0, negative = 1, usage = 2, limit = 3, failure = 4 };

struct CliError {
  int code;
  std::string message;
};

int exit_for(pb_status s) {
  switch (s) {
    case PB_OK: return ok;
    case PB_INVALID_ARGUMENT:
    case PB_OVERFLOW: return usage;
    case PB_RESOURCE_LIMIT: return limit;
    case PB_ILLEGAL_MOVE:
    case PB_CONSTRUCTION_FAILED: return negative;
    case PB_INTERNAL_ERROR: return failure;
  }
  return failure;
}

void check(pb_status s) {
  if (s != PB_OK) throw CliError{exit_for(s), std::string(pb_status_name(s)) + ": " + pb_last_error()};
}

struct GraphDeleter {
  void operator()(pb_graph* g) const { pb_graph_free(g); }
};
struct TraceDeleter {
  void operator()(pb_trace* t) const { pb_trace_free(t); }
};
struct SweepDeleter {
  void operator()(pb_sweep* s) const { pb_sweep_free(s); }
};
using GraphPtr = std::unique_ptr<pb_graph, GraphDeleter>;
using TracePtr = std::unique_ptr<pb_trace, TraceDeleter>;
using SweepPtr = std::unique_ptr<pb_sweep, SweepDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  pb_string_free(s);
  return out;
}

GraphPtr load_graph(const std::string& spec) {
  pb_graph* g = nullptr;
  check(pb_graph_from_spec(spec.c_str(), &g));
  return GraphPtr(g);
}

std::string describe(const pb_graph* g) {
  char* s = nullptr;
  check(pb_graph_describe(g, &s));
  return take_string(s);
}

std::vector<uint32_t> load_distribution(const std::string& text, const pb_graph* g) {
  size_t len = 0;
  std::vector<uint32_t> counts(pb_graph_vertex_count(g));
  const pb_status s = pb_parse_distribution(text.c_str(), counts.data(), counts.size(), &len);
  if (s == PB_INVALID_ARGUMENT && len != counts.size())
    throw CliError{usage, "distribution has " + std::to_string(len) + " entries, graph has " +
                              std::to_string(counts.size()) + " vertices"};
  check(s);
  if (len != counts.size())
    throw CliError{usage, "distribution has " + std::to_string(len) + " entries, graph has " +
                              std::to_string(counts.size()) + " vertices"};
  return counts;
}

std::string trace_json(const pb_trace* t) {
  char* s = nullptr;
  check(pb_trace_to_json(t, &s));
  return take_string(s);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{usage, "cannot write " + path};
  out << body << '\n';
}

std::string join(const std::vector<uint32_t>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

struct BudgetFlags {
  uint64_t max_states = 0;
  uint64_t max_pebbles = 0;

  pb_budget get() const {
    pb_budget b;
    pb_budget_default(&b);
    if (max_states) b.max_states = max_states;
    if (max_pebbles) b.max_pebbles = max_pebbles;
    return b;
  }
};

void add_budget(CLI::App* cmd, BudgetFlags& flags) {
  cmd->add_option("--max-states", flags.max_states,
                  "state budget per decision (default: PEBBLE_MAX_STATES or 10000000)");
  cmd->add_option("--max-pebbles", flags.max_pebbles,
                  "largest pebble total the solver accepts (default: PEBBLE_MAX_PEBBLES or 64)");
}

// gamma

struct GammaArgs {
  std::string spec;
  std::string method = "formula";
  BudgetFlags budget;
};

int run_gamma(const GammaArgs& a) {
  auto g = load_graph(a.spec);
  std::cout << "graph: " << describe(g.get()) << '\n';
  uint64_t bound = 0;
  size_t key = 0;
  check(pb_goodness_bound(g.get(), &bound, &key));

  std::optional<uint64_t> formula, exact;
  if (a.method != "exact") {
    uint64_t v = 0;
    check(pb_gamma_formula(g.get(), &v));
    formula = v;
    std::cout << "gamma (formula): " << v << '\n';
  }
  if (a.method != "formula") {
    const pb_budget b = a.budget.get();
    pb_gamma_result r{};
    std::vector<uint32_t> witness(pb_graph_vertex_count(g.get()));
    check(pb_gamma_exact(g.get(), &b, &r, witness.data(), witness.size()));
    exact = r.gamma;
    std::cout << "gamma (exact): " << r.gamma << '\n';
    std::cout << "uncoverable witness: " << join(witness) << '\n';
    std::cout << "distributions checked: " << r.distributions_checked << '\n';
  }
  const uint64_t gamma = exact ? *exact : *formula;
  std::cout << "lower bound: " << bound << '\n';
  std::cout << "good: " << (gamma == bound ? "yes" : "no") << '\n';
  if (gamma == bound) std::cout << "key vertex: " << key << '\n';
  if (formula && exact) {
    const bool agree = *formula == *exact;
    std::cout << "agree: " << (agree ? "yes" : "no") << '\n';
    if (!agree) return negative;
  }
  return ok;
}

// decide

struct DecideArgs {
  std::string spec, distribution, trace_path;
  BudgetFlags budget;
};

int run_decide(const DecideArgs& a) {
  auto g = load_graph(a.spec);
  const auto counts = load_distribution(a.distribution, g.get());
  const pb_budget b = a.budget.get();
  int coverable = 0;
  uint64_t states = 0;
  pb_trace* raw = nullptr;
  check(pb_decide(g.get(), counts.data(), counts.size(), &b, &coverable, &states,
                  a.trace_path.empty() ? nullptr : &raw));
  TracePtr trace(raw);
  std::cout << (coverable ? "coverable" : "not coverable") << '\n';
  std::cout << "states explored: " << states << '\n';
  if (trace) {
    std::cout << "moves: " << pb_trace_move_count(trace.get()) << '\n';
    write_file(a.trace_path, trace_json(trace.get()));
  }
  return coverable ? ok : negative;
}

// strategy

struct StrategyArgs {
  std::string spec, distribution, out;
  uint64_t gamma_g = 0;
  BudgetFlags budget;
};

// G is the product of every factor but the last; H is the last factor.
std::pair<GraphPtr, GraphPtr> split_product(const pb_graph* whole) {
  const size_t k = pb_graph_factor_count(whole);
  if (k == 0) {
    GraphPtr g = load_graph("path:1"), h;
    pb_graph* c = nullptr;
    check(pb_graph_clone(whole, &c));
    h.reset(c);
    return {std::move(g), std::move(h)};
  }
  auto factor = [&](size_t i) {
    pb_graph* f = nullptr;
    check(pb_graph_factor(whole, i, &f));
    return GraphPtr(f);
  };
  GraphPtr g = factor(0);
  for (size_t i = 1; i + 1 < k; ++i) {
    auto next = factor(i);
    pb_graph* p = nullptr;
    check(pb_graph_product(g.get(), next.get(), &p));
    g.reset(p);
  }
  return {std::move(g), factor(k - 1)};
}

int run_strategy(const StrategyArgs& a) {
  auto whole = load_graph(a.spec);
  const auto counts = load_distribution(a.distribution, whole.get());
  auto [g, h] = split_product(whole.get());
  if (pb_graph_path_or_cycle(h.get()) == 0)
    throw CliError{usage, "the last factor must be a path or a cycle"};
  const pb_budget b = a.budget.get();
  pb_trace* raw = nullptr;
  check(pb_cover_product(g.get(), h.get(), counts.data(), counts.size(), a.gamma_g, &b, &raw));
  TracePtr trace(raw);
  int covered = 0;
  check(pb_trace_verify(whole.get(), trace.get(), 1, &covered));
  if (!covered) throw CliError{failure, "trace does not cover the graph"};
  std::cout << "graph: " << describe(whole.get()) << '\n';
  std::cout << "moves: " << pb_trace_move_count(trace.get()) << '\n';
  std::cout << "covered: yes\n";
  const std::string json = trace_json(trace.get());
  if (a.out.empty())
    std::cout << json << '\n';
  else
    write_file(a.out, json);
  return ok;
}

// sweep

struct SweepArgs {
  std::optional<size_t> max_n, min_n;
  bool labeled = false, allow_five = false;
  std::vector<std::string> products;
  std::string tsv;
  BudgetFlags budget;
};

// "G,H" pairs, either inline or one per line in a file.
std::vector<std::pair<std::string, std::string>> product_pairs(const std::vector<std::string>& args) {
  std::vector<std::string> lines;
  for (const auto& arg : args) {
    std::ifstream in(arg);
    if (!in) {
      lines.push_back(arg);
      continue;
    }
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r");
      lines.push_back(line.substr(b, e - b + 1));
    }
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& l : lines) {
    const auto comma = l.find(',');
    if (comma == std::string::npos || l.find(',', comma + 1) != std::string::npos)
      throw CliError{usage, "expected a pair G,H: " + l};
    out.emplace_back(l.substr(0, comma), l.substr(comma + 1));
  }
  return out;
}

int run_sweep(const SweepArgs& a) {
  if (!a.max_n && a.products.empty())
    throw CliError{usage, "sweep needs --max-n and/or --products"};
  const pb_budget b = a.budget.get();
  size_t counterexamples = 0, unknown = 0;
  std::ostringstream table;

  if (a.max_n) {
    const size_t lo = a.min_n.value_or(*a.max_n);
    pb_sweep* raw = nullptr;
    check(pb_sweep_goodness(lo, *a.max_n, a.labeled ? 0 : 1, a.allow_five ? 1 : 0, &b, &raw));
    SweepPtr sweep(raw);
    char* tsv = nullptr;
    check(pb_sweep_tsv(sweep.get(), &tsv));
    table << take_string(tsv);
    const size_t bad = pb_sweep_counterexamples(sweep.get());
    const size_t unk = pb_sweep_unknown(sweep.get());
    counterexamples += bad;
    unknown += unk;
    std::cout << "# graphs: " << pb_sweep_graph_count(sweep.get()) << ", counterexamples: " << bad
              << ", unknown: " << unk << '\n';
  }

  if (!a.products.empty()) {
    const auto pairs = product_pairs(a.products);
    if (a.max_n) table << '\n';
    table << "g\th\tgamma_product\tgamma_g\tgamma_h\tverdict\n";
    size_t equal = 0, bad = 0, unk = 0;
    for (const auto& [gs, hs] : pairs) {
      auto g = load_graph(gs);
      auto h = load_graph(hs);
      pb_product_result r{};
      const pb_status s = pb_check_product(g.get(), h.get(), &b, &r);
      if (s == PB_RESOURCE_LIMIT) {
        ++unk;
        table << gs << '\t' << hs << "\t-\t-\t-\tunknown\n";
        continue;
      }
      check(s);
      const bool ok_pair = r.equal && r.product_good;
      (ok_pair ? equal : bad) += 1;
      table << gs << '\t' << hs << '\t' << r.gamma_product << '\t' << r.gamma_g << '\t' << r.gamma_h
            << '\t' << (ok_pair ? "equal" : (r.equal ? "not-good" : "not-equal")) << '\n';
      std::cout << "# " << gs << " x " << hs << ": " << r.gamma_product << " = " << r.gamma_g << "*"
                << r.gamma_h << (r.equal ? " equal" : " differs") << '\n';
    }
    counterexamples += bad;
    unknown += unk;
    std::cout << "# products: " << pairs.size() << ", equal: " << equal
              << ", counterexamples: " << bad << ", unknown: " << unk << '\n';
  }

  if (a.tsv.empty())
    std::cout << table.str();
  else
    write_file(a.tsv, table.str());
  if (counterexamples) return negative;
  return unknown ? limit : ok;
}

// fuzz

struct FuzzArgs {
  bool cycle = false;
  size_t iterations = 1000;
  uint64_t seed = 20240601;
  size_t max_n = 0;
  uint64_t max_q = 8;
  bool colors_up_to_q = false;
};

int run_fuzz(const FuzzArgs& a) {
  const size_t max_n = a.max_n ? a.max_n : (a.cycle ? 7 : 6);
  pb_fuzz_result r{};
  check(pb_fuzz_strategy(a.cycle ? 1 : 0, a.iterations, a.seed, max_n, a.max_q, a.colors_up_to_q ? 1 : 0, &r));
  std::cout << (a.cycle ? "cycle" : "path") << " seed " << a.seed << '\n';
  std::cout << "runs: " << r.runs << '\n';
  std::cout << "succeeded: " << r.succeeded << '\n';
  std::cout << "construction failed: " << r.construction_failed << '\n';
  std::cout << "replay failed: " << r.replay_failed << '\n';
  std::cout << "not covered: " << r.not_covered << '\n';
  return r.succeeded == r.runs ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cover pebbling numbers, coverability and constructive strategies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pb_version()));

  GammaArgs gamma;
  auto* g = app.add_subcommand("gamma", "cover pebbling number of a graph");
  g->add_option("graph", gamma.spec, "graph spec, e.g. cycle:6 or product:path:2,path:3")->required();
  g->add_option("--method", gamma.method, "formula, exact or both")
      ->check(CLI::IsMember({"formula", "exact", "both"}));
  add_budget(g, gamma.budget);

  DecideArgs decide;
  auto* d = app.add_subcommand("decide", "decide whether a distribution can cover the graph");
  d->add_option("graph", decide.spec, "graph spec")->required();
  d->add_option("distribution", decide.distribution, "pebble counts, e.g. 9,0,0,0")->required();
  d->add_option("--trace", decide.trace_path, "write the covering trace as JSON");
  add_budget(d, decide.budget);

  StrategyArgs strategy;
  auto* s = app.add_subcommand("strategy", "constructive cover of G x path or G x cycle");
  s->add_option("graph", strategy.spec, "graph spec whose last factor is a path or cycle")->required();
  s->add_option("distribution", strategy.distribution, "pebble counts")->required();
  s->add_option("--out", strategy.out, "write the trace here instead of standard output");
  s->add_option("--gamma-g", strategy.gamma_g, "known cover pebbling number of G");
  add_budget(s, strategy.budget);

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "check goodness and product equality over small graphs");
  w->add_option("--max-n", sweep.max_n, "largest vertex count");
  w->add_option("--min-n", sweep.min_n, "smallest vertex count (default: max-n)");
  w->add_flag("--labeled", sweep.labeled, "keep isomorphic copies");
  w->add_flag("--allow-five", sweep.allow_five, "permit five-vertex sweeps");
  w->add_option("--products", sweep.products, "G,H pair or file of pairs");
  w->add_option("--tsv", sweep.tsv, "write the table here instead of standard output");
  add_budget(w, sweep.budget);

  FuzzArgs fuzz;
  auto* f = app.add_subcommand("fuzz", "random inputs for the path and cycle strategies");
  f->add_flag("--cycle", fuzz.cycle, "fuzz cycles instead of paths");
  f->add_option("--iterations", fuzz.iterations, "number of inputs");
  f->add_option("--seed", fuzz.seed, "random seed");
  f->add_option("--max-n", fuzz.max_n, "largest path or cycle length");
  f->add_option("--max-q", fuzz.max_q, "largest Q");
  f->add_flag("--colors-up-to-q", fuzz.colors_up_to_q, "also draw Q colors, and Q = 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*g) return run_gamma(gamma);
    if (*d) return run_decide(decide);
    if (*s) return run_strategy(strategy);
    if (*w) return run_sweep(sweep);
    if (*f) return run_fuzz(fuzz);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return usage;
}
