#ifndef PEBBLE_DISTRIBUTION_HPP
#define PEBBLE_DISTRIBUTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pebble/graph.hpp"

namespace pebble {

using Count = std::uint32_t;
using Color = std::size_t;

// Uncolored pebble counts, one per vertex.
class Distribution {
public:
  Distribution() = default;
  explicit Distribution(std::size_t n) : counts_(n, 0) {}
  explicit Distribution(std::vector<Count> counts)
      : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  Count operator[](Vertex v) const { return counts_[v]; }
  Count& operator[](Vertex v) { return counts_[v]; }
  const std::vector<Count>& counts() const noexcept { return counts_; }

  std::uint64_t total() const noexcept;
  std::vector<Vertex> support() const;
  // Pebbles on vertices first..last inclusive.
  std::uint64_t range_sum(Vertex first, Vertex last) const;

  static Distribution simple(std::size_t n, Vertex v, Count pebbles);

  bool operator==(const Distribution&) const = default;

private:
  std::vector<Count> counts_;
};

// Pebble counts per (vertex, color). Stored row-major: one row per vertex.
class ColoredDistribution {
public:
  ColoredDistribution() = default;
  ColoredDistribution(std::size_t vertices, std::size_t colors)
      : n_(vertices), t_(colors), counts_(vertices * colors, 0) {}

  // Single-color view of a plain distribution.
  static ColoredDistribution from_plain(const Distribution& d);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t color_count() const noexcept { return t_; }

  Count at(Vertex v, Color c) const { return counts_[v * t_ + c]; }
  Count& at(Vertex v, Color c) { return counts_[v * t_ + c]; }
  std::span<const Count> row(Vertex v) const {
    return {counts_.data() + v * t_, t_};
  }

  std::uint64_t vertex_total(Vertex v) const;
  std::uint64_t color_total(Color c) const;
  std::uint64_t total() const;
  // Number of colors with at least one pebble anywhere / at v.
  std::size_t colors_present() const;
  std::size_t colors_present_at(Vertex v) const;

  Distribution to_plain() const;

  bool operator==(const ColoredDistribution&) const = default;

private:
  std::size_t n_ = 0;
  std::size_t t_ = 0;
  std::vector<Count> counts_;
};

// One color-respecting pebbling step. Plain moves use color 0.
struct PebblingMove {
  Vertex from = 0;
  Vertex to = 0;
  Color color = 0;

  bool operator==(const PebblingMove&) const = default;
};

// Self-verifying witness: an initial state and the moves applied to it.
struct Trace {
  ColoredDistribution initial;
  std::vector<PebblingMove> moves;
};

// Throws IllegalMove when {from,to} is not an edge, the color is out of
// range or fewer than two pebbles of that color sit on `from`.
ColoredDistribution apply_move(const Graph& g, const ColoredDistribution& d,
                               const PebblingMove& m);
// In-place variant used by the engines.
void apply_move_inplace(const Graph& g, ColoredDistribution& d,
                        const PebblingMove& m);

// Replays every move in order. On failure the IllegalMove carries the
// index of the offending move.
ColoredDistribution replay(const Graph& g, const Trace& trace);

bool is_q_covered(const ColoredDistribution& d, std::uint64_t q);
bool is_covered(const Distribution& d);

// D on G x H  ->  |V(G)|-colored distribution on H with
// out.at(j, i) = d[i * h + j].
ColoredDistribution associate(const Distribution& d, const Graph& g,
                              const Graph& h);

// Maps a colored trace on H (colors = vertices of G) onto G x H and checks
// that the result replays on the product. Replay failure is an
// InternalError.
Trace lift_moves(const Trace& colored, const Graph& g, const Graph& h);

// Potential sum_v d[v] * 2^(diameter - dist(v, root)); scaled so it is an
// exact integer. Never increases under a legal move.
std::uint64_t scaled_potential(const Graph& g, std::span<const Count> counts,
                               Vertex root);

// Text formats: "9,0,0,0" and "1,0;0,1;2,2" (rows per vertex).
Distribution parse_distribution(std::string_view text);
std::string format_distribution(const Distribution& d);
ColoredDistribution parse_colored_distribution(std::string_view text);
std::string format_colored_distribution(const ColoredDistribution& d);

// {"vertices":n,"colors":t,"initial":[[...]...],"moves":[{"from":..,"to":..,"color":..}]}
std::string trace_to_json(const Trace& trace);
Trace trace_from_json(std::string_view json);

}  // namespace pebble

#endif  // PEBBLE_DISTRIBUTION_HPP
