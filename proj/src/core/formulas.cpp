#include "pebble/formulas.hpp"

#include <limits>
#include <string>

#include "pebble/errors.hpp"

namespace pebble {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Overflow("product " + std::to_string(a) + " * " + std::to_string(b) +
                   " exceeds 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw Overflow("sum exceeds 64 bits");
  return out;
}

std::uint64_t pow2(std::uint64_t exponent) {
  if (exponent >= 64) throw Overflow("2^" + std::to_string(exponent) + " exceeds 64 bits");
  return std::uint64_t{1} << exponent;
}

std::uint64_t sigma(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) throw InvalidArgument("sigma: vertex out of range");
  std::uint64_t s = 0;
  for (Vertex w = 0; w < g.vertex_count(); ++w) s = checked_add(s, pow2(g.distance(w, v)));
  return s;
}

GoodnessBound goodness_bound(const Graph& g) {
  GoodnessBound best;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t s = sigma(g, v);
    if (s > best.value) best = {s, v};
  }
  return best;
}

std::uint64_t gamma_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("gamma_path: n must be >= 1");
  return pow2(n) - 1;
}

std::uint64_t gamma_cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("gamma_cycle: n must be >= 3");
  const std::uint64_t r = (n + 1) / 2;
  return checked_add(pow2(r), pow2(n - r + 1)) - 3;
}

std::uint64_t gamma_complete(std::size_t n) {
  if (n == 0) throw InvalidArgument("gamma_complete: n must be >= 1");
  return checked_mul(2, n) - 1;
}

std::uint64_t gamma_tree(const Graph& tree) {
  if (tree.edge_count() + 1 != tree.vertex_count())
    throw InvalidArgument("gamma_tree: graph is not a tree");
  return goodness_bound(tree).value;
}

namespace {

bool is_path_or_cycle(const Graph& g) {
  return g.family() == Family::path || g.family() == Family::cycle;
}

std::uint64_t gamma_single(const Graph& g) {
  switch (g.family()) {
    case Family::path: return gamma_path(g.family_size());
    case Family::cycle: return gamma_cycle(g.family_size());
    case Family::complete: return gamma_complete(g.family_size());
    case Family::star:
    case Family::tree: return gamma_tree(g);
    case Family::product:
    case Family::custom: break;
  }
  throw InvalidArgument(std::string("no closed form for a ") + to_string(g.family()) +
                        " factor");
}

}  // namespace

std::uint64_t gamma_product_formula(std::span<const Graph> factors) {
  if (factors.empty()) throw InvalidArgument("gamma_product_formula: no factors");
  std::size_t other = 0;
  for (const auto& f : factors) {
    if (f.family() == Family::product)
      throw InvalidArgument("gamma_product_formula: factors must be flattened");
    if (!is_path_or_cycle(f)) ++other;
  }
  // Only products of paths and cycles with at least one more good factor are
  // known; two trees or two complete graphs are not covered.
  if (other > 1)
    throw InvalidArgument(
        "gamma_product_formula: at most one factor may be a tree or complete graph");
  std::uint64_t value = 1;
  for (const auto& f : factors) value = checked_mul(value, gamma_single(f));
  return value;
}

std::uint64_t gamma_formula(const Graph& g) {
  if (g.family() == Family::product) return gamma_product_formula(g.factors());
  return gamma_single(g);
}

bool has_gamma_formula(const Graph& g) noexcept {
  try {
    (void)gamma_formula(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace pebble
