#include "pebble/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "pebble/errors.hpp"

namespace pebble {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::vector<std::vector<Vertex>> adjacency_lists(std::size_t n,
                                                 const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::size_t parse_size(std::string_view text, std::string_view what) {
  text = trim(text);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::tree: return "tree";
    case Family::product: return "product";
    case Family::custom: return "custom";
  }
  return "?";
}

std::vector<std::uint32_t> bfs_distances(
    std::size_t n, const std::vector<std::vector<Vertex>>& adjacency) {
  std::vector<std::uint32_t> dist(n * n, kUnreached);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::uint32_t* row = dist.data() + s * n;
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : adjacency[u]) {
        if (row[w] == kUnreached) {
          row[w] = row[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (Vertex v = 0; v < n; ++v)
      if (row[v] == kUnreached) throw InvalidArgument("graph is not connected");
  }
  return dist;
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, Family family,
                        std::size_t family_size) {
  if (n == 0) throw InvalidArgument("graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidArgument("duplicate edge");

  auto adj = adjacency_lists(n, edges);
  Graph g;
  g.n_ = n;
  g.dist_ = bfs_distances(n, adj);
  g.edges_ = std::move(edges);
  g.adj_offsets_.reserve(n + 1);
  g.adj_offsets_.push_back(0);
  for (const auto& list : adj) {
    g.adj_.insert(g.adj_.end(), list.begin(), list.end());
    g.adj_offsets_.push_back(g.adj_.size());
  }
  g.diameter_ = *std::max_element(g.dist_.begin(), g.dist_.end());
  g.family_ = family;
  g.family_size_ = family_size == 0 ? n : family_size;
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::string Graph::describe() const {
  switch (family_) {
    case Family::path:
    case Family::cycle:
    case Family::complete:
    case Family::star:
      return std::string(to_string(family_)) + ":" + std::to_string(family_size_);
    case Family::tree:
    case Family::custom:
      return std::string(to_string(family_)) + "(" + std::to_string(n_) + "v," +
             std::to_string(edges_.size()) + "e)";
    case Family::product: {
      std::string out = "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += ",";
        out += factors_[i].describe();
      }
      return out + ")";
    }
  }
  return "?";
}

Graph build_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(edges), Family::path, n);
}

Graph build_cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, std::move(edges), Family::cycle, n);
}

Graph build_complete(std::size_t n) {
  if (n == 0) throw InvalidArgument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges), Family::complete, n);
}

Graph build_star(std::size_t n) {
  if (n == 0) throw InvalidArgument("star needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(n, std::move(edges), Family::star, n);
}

Graph build_tree(const std::vector<Edge>& edges) {
  const std::size_t n = edges.size() + 1;
  for (auto [u, v] : edges)
    if (u >= n || v >= n)
      throw InvalidArgument("tree edge endpoint out of range (tree on " +
                            std::to_string(n) + " vertices)");
  // n - 1 edges and connected <=> tree; from_edges rejects disconnected input.
  return Graph::from_edges(n, edges, Family::tree, n);
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t gn = g.vertex_count();
  const std::size_t hn = h.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(gn * h.edge_count() + hn * g.edge_count());
  // Same G-coordinate, adjacent in H.
  for (Vertex i = 0; i < gn; ++i)
    for (auto [a, b] : h.edges()) edges.emplace_back(i * hn + a, i * hn + b);
  // Same H-coordinate, adjacent in G.
  for (auto [a, b] : g.edges())
    for (Vertex j = 0; j < hn; ++j) edges.emplace_back(a * hn + j, b * hn + j);

  Graph p = Graph::from_edges(gn * hn, std::move(edges), Family::product, gn * hn);
  auto append = [&](const Graph& f) {
    if (f.family() == Family::product)
      p.factors_.insert(p.factors_.end(), f.factors().begin(), f.factors().end());
    else
      p.factors_.push_back(f);
  };
  append(g);
  append(h);
  return p;
}

Graph cartesian_product(std::span<const Graph> factors) {
  if (factors.empty()) throw InvalidArgument("product needs at least one factor");
  Graph acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = cartesian_product(acc, factors[i]);
  return acc;
}

Fingerprint fingerprint(const Graph& g) {
  Fingerprint f;
  f.vertices = g.vertex_count();
  f.edges = g.edge_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v) f.degrees.push_back(g.degree(v));
  std::sort(f.degrees.begin(), f.degrees.end());
  f.distances = g.distance_matrix();
  std::sort(f.distances.begin(), f.distances.end());
  return f;
}

std::vector<Edge> parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream in{std::string(line)};
    long long u = -1, v = -1;
    std::string rest;
    if (!(in >> u >> v) || (in >> rest) || u < 0 || v < 0)
      throw InvalidArgument("edge list line " + std::to_string(line_no) +
                            ": expected two non-negative indices");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return edges;
}

std::vector<Edge> read_edge_file(const std::string& path) {
  return parse_edge_list(read_file(path));
}

std::uint64_t canonical_form(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 8) throw InvalidArgument("canonical_form: at most 8 vertices");
  // bit index of pair (u, v), u < v, in row order
  auto bit = [n](Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
  };
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mask = 0;
    for (const auto& [u, v] : g.edges()) mask |= std::uint64_t{1} << bit(perm[u], perm[v]);
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Graph parse_graph_spec(std::string_view spec) {
  spec = trim(spec);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgument("graph spec '" + std::string(spec) + "' lacks ':'");
  const std::string kind = lower(trim(spec.substr(0, colon)));
  const std::string_view arg = trim(spec.substr(colon + 1));

  if (kind == "path") return build_path(parse_size(arg, "path size"));
  if (kind == "cycle") return build_cycle(parse_size(arg, "cycle size"));
  if (kind == "complete") return build_complete(parse_size(arg, "complete size"));
  if (kind == "star") return build_star(parse_size(arg, "star size"));
  if (kind == "tree") return build_tree(read_edge_file(std::string(arg)));
  if (kind == "edges") {
    auto edges = read_edge_file(std::string(arg));
    std::size_t n = 1;
    for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
    return Graph::from_edges(n, std::move(edges));
  }
  if (kind == "product") {
    std::vector<Graph> factors;
    std::string_view rest = arg;
    while (true) {
      auto comma = rest.find(',');
      factors.push_back(parse_graph_spec(rest.substr(0, comma)));
      if (factors.back().family() == Family::product)
        throw InvalidArgument("nested product specs are not supported");
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (factors.size() < 2)
      throw InvalidArgument("product needs at least two factors");
    return cartesian_product(factors);
  }
  throw InvalidArgument("unknown graph kind '" + kind + "'");
}

}  // namespace pebble
