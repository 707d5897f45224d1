#ifndef PEBBLE_STRATEGY_HPP
#define PEBBLE_STRATEGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"
#include "pebble/solver.hpp"

namespace pebble {

// Constructive covering strategies for colored distributions on paths and
// cycles, and the product pipeline built on them. Every outcome is checked
// by replay before it is returned.

struct StrategyOutcome {
  Trace trace;
  ColoredDistribution achieved;
};

struct PairSelection {
  Color color = 0;
  Count pairs = 0;

  bool operator==(const PairSelection&) const = default;
};

// Same-color pairs at one vertex whose pair count is at least floor(E/2).
// Requires 0 <= E <= M - t', where M is the vertex total and t' the number
// of colors present there.
std::vector<PairSelection> extract_pairs(std::span<const Count> per_color,
                                         std::int64_t e);

// Window of r consecutive cycle vertices starting at `start`.
struct WindowClassification {
  Vertex start = 0;
  std::size_t length = 0;
  bool saturated = false;  // at least q(2^r - 1) pebbles
  bool primary = false;    // start is a support vertex
};

std::vector<WindowClassification> classify_windows(
    const ColoredDistribution& d, std::uint64_t q);

// The vertices are those of build_path(m); vertex 0 holds exactly k < q
// pebbles, every other vertex at least q, and the total is at least
// q(m - 1) + 2^(m-1) q.
StrategyOutcome cover_v1(const ColoredDistribution& d, std::uint64_t q,
                         std::uint64_t k);

// Q-covers build_path(n) given at least q(2^n - 1) pebbles in at most q
// colors.
StrategyOutcome q_cover_path(const ColoredDistribution& d, std::uint64_t q);

// Q-covers build_cycle(n) given at least q * gamma_cycle(n) pebbles under
// the same color condition.
StrategyOutcome q_cover_cycle(const ColoredDistribution& d, std::uint64_t q);

// Covers G x H from d, where H is a path or cycle and d holds at least
// gamma(G) * gamma(H) pebbles. gamma(G) comes from the closed forms when G
// belongs to a known family and from gamma_exact otherwise; pass it
// explicitly to skip that step.
StrategyOutcome cover_product(const Distribution& d, const Graph& g,
                              const Graph& h, const SolverBudget& budget = {},
                              std::optional<std::uint64_t> gamma_g = {});

namespace detail {

// Individual cycle branches, exposed for testing. Each returns nullopt when
// its entry conditions do not hold for `d`.
std::optional<StrategyOutcome> cycle_partition_branch(
    const ColoredDistribution& d, std::uint64_t q);
std::optional<StrategyOutcome> cycle_odd_transfer_branch(
    const ColoredDistribution& d, std::uint64_t q);
std::optional<StrategyOutcome> cycle_main_branch(
    const ColoredDistribution& d, std::uint64_t q);

// Labeling chosen for the main branch: rotation start and the offset of
// the nearest unsaturated window.
struct MainLabeling {
  Vertex start = 0;
  std::size_t offset = 0;
};
std::optional<MainLabeling> find_main_labeling(const ColoredDistribution& d,
                                               std::uint64_t q);

}  // namespace detail

// Seeded random inputs for the path/cycle strategies.
struct StrategyFuzzConfig {
  bool cycle = false;
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;
  std::size_t max_vertices = 6;
  std::uint64_t max_q = 8;
  // Draw t' from 1..q (and q from 1) instead of 1..q-1.
  bool colors_up_to_q = false;
};

struct StrategyFuzzResult {
  std::size_t runs = 0;
  std::size_t succeeded = 0;
  std::size_t construction_failed = 0;
  std::size_t replay_failed = 0;
  std::size_t not_covered = 0;
};

StrategyFuzzResult fuzz_strategy(const StrategyFuzzConfig& config);

}  // namespace pebble

#endif  // PEBBLE_STRATEGY_HPP
