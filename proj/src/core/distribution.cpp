#include "pebble/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "json.hpp"

#include "pebble/errors.hpp"

namespace pebble {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::illegal_move: return "illegal-move";
    case ErrorCode::resource_limit: return "resource-limit";
    case ErrorCode::construction_failed: return "construction-failed";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::internal: return "internal-error";
  }
  return "?";
}

std::uint64_t Distribution::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<Vertex> Distribution::support() const {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < counts_.size(); ++v)
    if (counts_[v] > 0) s.push_back(v);
  return s;
}

std::uint64_t Distribution::range_sum(Vertex first, Vertex last) const {
  if (first > last || last >= counts_.size())
    throw InvalidArgument("range_sum: bad vertex range");
  return std::accumulate(counts_.begin() + static_cast<std::ptrdiff_t>(first),
                         counts_.begin() + static_cast<std::ptrdiff_t>(last) + 1,
                         std::uint64_t{0});
}

Distribution Distribution::simple(std::size_t n, Vertex v, Count pebbles) {
  if (v >= n) throw InvalidArgument("simple distribution: vertex out of range");
  Distribution d(n);
  d[v] = pebbles;
  return d;
}

ColoredDistribution ColoredDistribution::from_plain(const Distribution& d) {
  ColoredDistribution c(d.size(), 1);
  for (Vertex v = 0; v < d.size(); ++v) c.at(v, 0) = d[v];
  return c;
}

std::uint64_t ColoredDistribution::vertex_total(Vertex v) const {
  auto r = row(v);
  return std::accumulate(r.begin(), r.end(), std::uint64_t{0});
}

std::uint64_t ColoredDistribution::color_total(Color c) const {
  std::uint64_t s = 0;
  for (Vertex v = 0; v < n_; ++v) s += at(v, c);
  return s;
}

std::uint64_t ColoredDistribution::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::size_t ColoredDistribution::colors_present() const {
  std::size_t k = 0;
  for (Color c = 0; c < t_; ++c)
    if (color_total(c) > 0) ++k;
  return k;
}

std::size_t ColoredDistribution::colors_present_at(Vertex v) const {
  auto r = row(v);
  return static_cast<std::size_t>(
      std::count_if(r.begin(), r.end(), [](Count x) { return x > 0; }));
}

Distribution ColoredDistribution::to_plain() const {
  Distribution d(n_);
  for (Vertex v = 0; v < n_; ++v) d[v] = static_cast<Count>(vertex_total(v));
  return d;
}

void apply_move_inplace(const Graph& g, ColoredDistribution& d,
                        const PebblingMove& m) {
  if (d.vertex_count() != g.vertex_count())
    throw InvalidArgument("distribution size does not match graph");
  if (!g.adjacent(m.from, m.to))
    throw IllegalMove(0, "move " + std::to_string(m.from) + "->" +
                             std::to_string(m.to) + " is not along an edge");
  if (m.color >= d.color_count())
    throw IllegalMove(0, "move color " + std::to_string(m.color) + " out of range");
  if (d.at(m.from, m.color) < 2)
    throw IllegalMove(0, "vertex " + std::to_string(m.from) +
                             " has fewer than two pebbles of color " +
                             std::to_string(m.color));
  d.at(m.from, m.color) -= 2;
  d.at(m.to, m.color) += 1;
}

ColoredDistribution apply_move(const Graph& g, const ColoredDistribution& d,
                               const PebblingMove& m) {
  ColoredDistribution out = d;
  apply_move_inplace(g, out, m);
  return out;
}

ColoredDistribution replay(const Graph& g, const Trace& trace) {
  ColoredDistribution d = trace.initial;
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    try {
      apply_move_inplace(g, d, trace.moves[i]);
    } catch (const IllegalMove& e) {
      throw IllegalMove(i, "move " + std::to_string(i) + ": " + e.what());
    }
  }
  return d;
}

bool is_q_covered(const ColoredDistribution& d, std::uint64_t q) {
  for (Vertex v = 0; v < d.vertex_count(); ++v)
    if (d.vertex_total(v) < q) return false;
  return true;
}

bool is_covered(const Distribution& d) {
  return std::all_of(d.counts().begin(), d.counts().end(),
                     [](Count c) { return c > 0; });
}

ColoredDistribution associate(const Distribution& d, const Graph& g,
                              const Graph& h) {
  const std::size_t gn = g.vertex_count();
  const std::size_t hn = h.vertex_count();
  if (d.size() != gn * hn)
    throw InvalidArgument("associate: distribution has " + std::to_string(d.size()) +
                          " entries, product has " + std::to_string(gn * hn));
  ColoredDistribution out(hn, gn);
  for (Vertex i = 0; i < gn; ++i)
    for (Vertex j = 0; j < hn; ++j) out.at(j, i) = d[i * hn + j];
  return out;
}

Trace lift_moves(const Trace& colored, const Graph& g, const Graph& h) {
  const std::size_t gn = g.vertex_count();
  const std::size_t hn = h.vertex_count();
  if (colored.initial.vertex_count() != hn || colored.initial.color_count() != gn)
    throw InvalidArgument("lift_moves: colored trace does not match G and H");

  Trace lifted;
  lifted.initial = ColoredDistribution(gn * hn, 1);
  for (Vertex i = 0; i < gn; ++i)
    for (Vertex j = 0; j < hn; ++j)
      lifted.initial.at(i * hn + j, 0) = colored.initial.at(j, i);
  lifted.moves.reserve(colored.moves.size());
  for (const auto& m : colored.moves)
    lifted.moves.push_back({m.color * hn + m.from, m.color * hn + m.to, 0});

  const Graph product = cartesian_product(g, h);
  try {
    replay(product, lifted);
  } catch (const IllegalMove& e) {
    throw InternalError(std::string("lifted trace does not replay: ") + e.what());
  }
  return lifted;
}

std::uint64_t scaled_potential(const Graph& g, std::span<const Count> counts,
                               Vertex root) {
  const std::uint32_t diam = g.diameter();
  std::uint64_t s = 0;
  for (Vertex v = 0; v < counts.size(); ++v)
    s += static_cast<std::uint64_t>(counts[v]) << (diam - g.distance(v, root));
  return s;
}

namespace {

std::vector<Count> parse_count_list(std::string_view text) {
  std::vector<Count> out;
  while (true) {
    auto comma = text.find(',');
    std::string_view tok = text.substr(0, comma);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
      tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
      tok.remove_suffix(1);
    Count value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw InvalidArgument("bad pebble count '" + std::string(tok) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

template <class Range>
std::string join(const Range& r, char sep) {
  std::string out;
  bool first = true;
  for (const auto& x : r) {
    if (!first) out += sep;
    out += std::to_string(x);
    first = false;
  }
  return out;
}

}  // namespace

Distribution parse_distribution(std::string_view text) {
  return Distribution(parse_count_list(text));
}

std::string format_distribution(const Distribution& d) {
  return join(d.counts(), ',');
}

ColoredDistribution parse_colored_distribution(std::string_view text) {
  std::vector<std::vector<Count>> rows;
  while (true) {
    auto semi = text.find(';');
    rows.push_back(parse_count_list(text.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    text = text.substr(semi + 1);
  }
  const std::size_t t = rows.front().size();
  ColoredDistribution d(rows.size(), t);
  for (Vertex v = 0; v < rows.size(); ++v) {
    if (rows[v].size() != t)
      throw InvalidArgument("colored distribution rows differ in length");
    for (Color c = 0; c < t; ++c) d.at(v, c) = rows[v][c];
  }
  return d;
}

std::string format_colored_distribution(const ColoredDistribution& d) {
  std::string out;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (v) out += ';';
    out += join(d.row(v), ',');
  }
  return out;
}

std::string trace_to_json(const Trace& trace) {
  nlohmann::ordered_json j;
  j["vertices"] = trace.initial.vertex_count();
  j["colors"] = trace.initial.color_count();
  auto rows = nlohmann::ordered_json::array();
  for (Vertex v = 0; v < trace.initial.vertex_count(); ++v) {
    auto r = trace.initial.row(v);
    rows.push_back(std::vector<Count>(r.begin(), r.end()));
  }
  j["initial"] = std::move(rows);
  auto moves = nlohmann::ordered_json::array();
  for (const auto& m : trace.moves)
    moves.push_back({{"from", m.from}, {"to", m.to}, {"color", m.color}});
  j["moves"] = std::move(moves);
  return j.dump();
}

Trace trace_from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    const auto n = j.at("vertices").get<std::size_t>();
    const auto t = j.at("colors").get<std::size_t>();
    Trace trace;
    trace.initial = ColoredDistribution(n, t);
    const auto& rows = j.at("initial");
    if (rows.size() != n) throw InvalidArgument("trace: initial has wrong row count");
    for (Vertex v = 0; v < n; ++v) {
      if (rows[v].size() != t) throw InvalidArgument("trace: initial row has wrong width");
      for (Color c = 0; c < t; ++c) trace.initial.at(v, c) = rows[v][c].get<Count>();
    }
    for (const auto& m : j.at("moves"))
      trace.moves.push_back({m.at("from").get<Vertex>(), m.at("to").get<Vertex>(),
                             m.at("color").get<Color>()});
    return trace;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("trace json: ") + e.what());
  }
}

}  // namespace pebble
