#ifndef PEBBLE_SOLVER_HPP
#define PEBBLE_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"

namespace pebble {

struct SolverBudget {
  // States expanded per decision before giving up with ResourceLimit.
  std::uint64_t max_states = 10'000'000;
  // Largest pebble total a decision or enumeration will accept.
  std::uint64_t max_pebbles = 64;
  // Failed-state memo entries kept per solver; beyond this the search
  // simply stops memoizing.
  std::size_t memo_cap = std::size_t{1} << 22;

  // Defaults, overridden by PEBBLE_MAX_STATES / PEBBLE_MAX_PEBBLES when set.
  static SolverBudget from_env();
};

struct SolverOptions {
  bool potential_prune = true;
  bool memoize = true;
  bool heuristic_order = true;
};

struct CoverReport {
  bool coverable = false;
  std::optional<Trace> trace;  // present iff coverable
  std::uint64_t states_explored = 0;
};

// Exact coverability search bound to one graph. The failed-state memo is
// kept across calls, which is sound because failure depends only on the
// state and the graph. Not thread-safe; use one instance per thread.
class CoverSolver {
public:
  explicit CoverSolver(const Graph& g, SolverBudget budget = {},
                       SolverOptions options = {});
  ~CoverSolver();
  CoverSolver(CoverSolver&&) noexcept;
  CoverSolver& operator=(CoverSolver&&) noexcept;

  CoverReport decide(const Distribution& d);
  std::size_t memo_size() const noexcept;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CoverReport decide_coverable(const Graph& g, const Distribution& d,
                             const SolverBudget& budget = {},
                             const SolverOptions& options = {});

// All compositions of `total` into `n` non-negative parts, starting at
// (total, 0, ..., 0) and ending at (0, ..., 0, total).
class CompositionStream {
public:
  CompositionStream(std::size_t n, std::uint64_t total);

  // Fills `out` with the next composition; false once exhausted.
  bool next(std::vector<Count>& out);

private:
  std::size_t n_;
  std::uint64_t total_;
  std::vector<Count> current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Distribution> enumerate_distributions(std::size_t n,
                                                  std::uint64_t total);
// C(total + n - 1, n - 1); throws Overflow past 64 bits.
std::uint64_t composition_count(std::size_t n, std::uint64_t total);

struct GammaReport {
  std::uint64_t gamma = 0;
  // gamma - 1 pebbles that cannot be cover pebbled.
  Distribution witness;
  bool good = false;
  std::optional<Vertex> key_vertex;
  std::uint64_t lower_bound = 0;
  std::uint64_t distributions_checked = 0;
};

// Smallest N such that every N-pebble distribution is coverable, searched
// upward from the goodness bound.
GammaReport gamma_exact(const Graph& g, const SolverBudget& budget = {});
GammaReport is_good(const Graph& g, const SolverBudget& budget = {});

enum class Verdict { good, not_good, unknown };
const char* to_string(Verdict v) noexcept;

struct SweepEntry {
  std::size_t vertices = 0;
  std::vector<Edge> edges;
  Verdict verdict = Verdict::unknown;
  std::uint64_t gamma = 0;        // 0 when unknown
  std::uint64_t lower_bound = 0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  std::size_t counterexamples = 0;
  std::size_t unknown = 0;
};

struct SweepOptions {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 4;
  // Keep one graph per isomorphism class.
  bool dedup = true;
  // Permit max_vertices = 5.
  bool allow_five = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Goodness of every connected labeled graph in the size range.
SweepReport sweep_goodness(const SweepOptions& options,
                           const SolverBudget& budget = {});

// Every connected labeled graph on exactly n vertices (edge subsets of K_n
// in increasing bitmask order).
std::vector<Graph> connected_labeled_graphs(std::size_t n);

struct ProductCheck {
  std::uint64_t gamma_product = 0;
  std::uint64_t gamma_g = 0;
  std::uint64_t gamma_h = 0;
  bool equal = false;
  bool product_good = false;
  // Simple distribution on the paired key vertices.
  Vertex paired_key = 0;
  std::uint64_t paired_sigma = 0;
  bool paired_sigma_matches = false;   // paired_sigma == sigma_G * sigma_H
  bool paired_witness_blocked = false; // paired_sigma - 1 pebbles not coverable
};

ProductCheck check_product_equality(const Graph& g, const Graph& h,
                                    const SolverBudget& budget = {});

std::string sweep_to_tsv(const SweepReport& report);

}  // namespace pebble

#endif  // PEBBLE_SOLVER_HPP
