#ifndef PEBBLE_GRAPH_HPP
#define PEBBLE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pebble {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Family { path, cycle, complete, star, tree, product, custom };

const char* to_string(Family family) noexcept;

class Graph;

// Immutable undirected simple connected graph with all-pairs hop distances.
//
// Products keep their flattened factor list so closed-form formulas can be
// evaluated without re-recognizing the structure. Product vertex (i, j) of
// G x H is encoded as i * |V(H)| + j, so each fiber G x {v_j} is the
// arithmetic progression j, j + h, j + 2h, ...
class Graph {
public:
  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Edges as (u, v) with u < v, sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  std::uint32_t distance(Vertex u, Vertex v) const {
    return dist_[u * n_ + v];
  }
  const std::vector<std::uint32_t>& distance_matrix() const noexcept {
    return dist_;
  }
  std::uint32_t diameter() const noexcept { return diameter_; }

  Family family() const noexcept { return family_; }
  // Parameter of path/cycle/complete/star; vertex count otherwise.
  std::size_t family_size() const noexcept { return family_size_; }
  // Flattened factors of a product; empty for anything else.
  const std::vector<Graph>& factors() const noexcept { return factors_; }

  // Short human-readable description, e.g. "path:3" or "product(path:2,cycle:4)".
  std::string describe() const;

  // Validates and builds. Throws InvalidArgument on self-loops, duplicate
  // edges, out-of-range endpoints or a disconnected result.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                          Family family = Family::custom,
                          std::size_t family_size = 0);

private:
  Graph() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<Vertex> adj_;
  std::vector<std::uint32_t> dist_;
  std::uint32_t diameter_ = 0;
  Family family_ = Family::custom;
  std::size_t family_size_ = 0;
  std::vector<Graph> factors_;

  friend Graph cartesian_product(const Graph& g, const Graph& h);
};

Graph build_path(std::size_t n);
Graph build_cycle(std::size_t n);
Graph build_complete(std::size_t n);
// K_{1,n-1} with center 0.
Graph build_star(std::size_t n);
// Vertex count is inferred as (number of edges + 1); an empty list is the
// single-vertex tree. Rejects cycles and disconnected input.
Graph build_tree(const std::vector<Edge>& edges);

Graph cartesian_product(const Graph& g, const Graph& h);
// Left fold: ((f0 x f1) x f2) x ...
Graph cartesian_product(std::span<const Graph> factors);

// BFS hop distances, row-major n x n. Throws InvalidArgument when the
// adjacency lists describe a disconnected graph.
std::vector<std::uint32_t> bfs_distances(
    std::size_t n, const std::vector<std::vector<Vertex>>& adjacency);

// Degree sequence, distance multiset and sizes. Equal for isomorphic graphs.
struct Fingerprint {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::vector<std::size_t> degrees;
  std::vector<std::uint32_t> distances;

  auto operator<=>(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Graph& g);

// Smallest edge bitmask over all relabelings; equal exactly for isomorphic
// graphs. Brute force over n! permutations, so n is capped at 8.
std::uint64_t canonical_form(const Graph& g);

// GraphSpec grammar (case-insensitive):
//   path:N | cycle:N | complete:N | star:N | tree:FILE | edges:FILE
//   product:SPEC,SPEC[,SPEC...]
Graph parse_graph_spec(std::string_view spec);

// Edge list text: one "u v" per line, '#' comments and blank lines ignored.
std::vector<Edge> parse_edge_list(std::string_view text);
std::vector<Edge> read_edge_file(const std::string& path);

}  // namespace pebble

#endif  // PEBBLE_GRAPH_HPP
