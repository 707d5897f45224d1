#ifndef PEBBLE_FORMULAS_HPP
#define PEBBLE_FORMULAS_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "pebble/graph.hpp"

namespace pebble {

// Closed-form cover pebbling numbers. All values are exact 64-bit integers;
// anything that does not fit throws Overflow.

// Pebbles needed to cover G from a simple distribution on v:
// sum over w of 2^dist(w, v).
std::uint64_t sigma(const Graph& g, Vertex v);

struct GoodnessBound {
  std::uint64_t value = 0;
  Vertex key_vertex = 0;  // smallest index attaining the maximum
};

// max_v sigma(G, v). A lower bound on the cover pebbling number of any
// graph; equal to it exactly when G is good.
GoodnessBound goodness_bound(const Graph& g);

std::uint64_t gamma_path(std::size_t n);
// 2^r + 2^(n-r+1) - 3 with r = ceil(n/2).
std::uint64_t gamma_cycle(std::size_t n);
std::uint64_t gamma_complete(std::size_t n);
std::uint64_t gamma_tree(const Graph& tree);

// Product of per-factor values. Each factor must be a path, cycle, star,
// tree or complete graph, and at most one factor may be something other
// than a path or cycle.
std::uint64_t gamma_product_formula(std::span<const Graph> factors);

// Dispatches on g.family(). Custom graphs have no formula and throw
// InvalidArgument.
std::uint64_t gamma_formula(const Graph& g);
bool has_gamma_formula(const Graph& g) noexcept;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t pow2(std::uint64_t exponent);

}  // namespace pebble

#endif  // PEBBLE_FORMULAS_HPP
