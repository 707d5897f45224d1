#include "pebble/strategy.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"

namespace pebble {

namespace {

// Every recursive step below works on a "pool": a sub-multiset of the
// pebbles currently on the host path or cycle, stored at host size. Pools
// never share pebbles, so a move that is legal inside a pool is legal in the
// full state, and running sub-pools one after another composes.
using Pool = ColoredDistribution;
using Path = std::vector<Vertex>;

constexpr std::uint64_t kNoFloor = 0;

std::uint64_t sum_on(const Pool& pool, std::span<const Vertex> vertices) {
  std::uint64_t s = 0;
  for (Vertex v : vertices) s += pool.vertex_total(v);
  return s;
}

bool covered_on(const Pool& pool, std::span<const Vertex> vertices, std::uint64_t q) {
  return std::all_of(vertices.begin(), vertices.end(),
                     [&](Vertex v) { return pool.vertex_total(v) >= q; });
}

Pool operator+(Pool a, const Pool& b) {
  for (Vertex v = 0; v < a.vertex_count(); ++v)
    for (Color c = 0; c < a.color_count(); ++c) a.at(v, c) += b.at(v, c);
  return a;
}

// q(2^k - 1)
std::uint64_t path_need(std::uint64_t q, std::size_t k) {
  return checked_mul(q, pow2(k) - 1);
}

struct Split {
  Pool selected;
  Pool leftover;
};

// Moves exactly `amount` pebbles from `pool` into `selected`, reading the
// listed vertices in order and colors in increasing index. When floors are
// given, vertex i first contributes min(floor_i, available) pebbles and the
// remainder is then filled greedily.
Split select(const Pool& pool, std::span<const Vertex> vertices, std::uint64_t amount,
             std::span<const std::uint64_t> floors = {}) {
  Split out{Pool(pool.vertex_count(), pool.color_count()), pool};
  std::uint64_t need = amount;
  auto take = [&](Vertex v, std::uint64_t limit) {
    for (Color c = 0; c < pool.color_count() && limit > 0 && need > 0; ++c) {
      const auto k = static_cast<Count>(
          std::min<std::uint64_t>({out.leftover.at(v, c), limit, need}));
      out.leftover.at(v, c) -= k;
      out.selected.at(v, c) += k;
      limit -= k;
      need -= k;
    }
  };
  for (std::size_t i = 0; i < floors.size(); ++i) take(vertices[i], floors[i]);
  for (Vertex v : vertices) take(v, std::numeric_limits<std::uint64_t>::max());
  if (need != 0)
    throw ConstructionFailed("pool selection short by " + std::to_string(need) +
                             " pebbles");
  return out;
}

void move_pairs(Pool& pool, Vertex from, Vertex to,
                const std::vector<PairSelection>& pairs,
                std::vector<PebblingMove>& moves) {
  for (const auto& p : pairs) {
    for (Count k = 0; k < p.pairs; ++k) {
      if (pool.at(from, p.color) < 2)
        throw ConstructionFailed("pair extraction ran out of pebbles");
      pool.at(from, p.color) -= 2;
      pool.at(to, p.color) += 1;
      moves.push_back({from, to, p.color});
    }
  }
}

std::vector<PairSelection> pairs_or_fail(const Pool& pool, Vertex v, std::int64_t e) {
  try {
    return extract_pairs(pool.row(v), e);
  } catch (const InvalidArgument& err) {
    throw ConstructionFailed(std::string("pair extraction precondition: ") + err.what());
  }
}

// `pool` holds exactly K < q pebbles on path[0], at least q on every other
// vertex and at least q(m-1) + 2^(m-1) q in total.
Pool cover_first(const Path& path, const Pool& pool, std::uint64_t q, std::uint64_t k,
                 std::vector<PebblingMove>& moves) {
  const std::size_t m = path.size();
  if (m < 2) throw ConstructionFailed("cover_first needs at least two vertices");
  const std::uint64_t need =
      checked_add(checked_mul(q, m - 1), checked_mul(pow2(m - 1), q));
  if (pool.vertex_total(path[0]) != k || k >= q || sum_on(pool, path) < need)
    throw ConstructionFailed("cover_first precondition violated");

  std::vector<std::uint64_t> floors(m, q);
  floors[0] = k;
  auto [work, rest] = select(pool, path, need, floors);
  for (std::size_t i = 1; i < m; ++i)
    if (work.vertex_total(path[i]) < q)
      throw ConstructionFailed("cover_first: vertex below q before the move");

  const Vertex last = path[m - 1];
  if (m == 2) {
    const auto e = static_cast<std::int64_t>(2 * q - 2 * k);
    move_pairs(work, last, path[0], pairs_or_fail(work, last, e), moves);
    return work + rest;
  }

  // Keep q on the far end, push floor(E/2) one step inward, recurse.
  const auto e = static_cast<std::int64_t>(work.vertex_total(last) - q);
  move_pairs(work, last, path[m - 2], pairs_or_fail(work, last, e), moves);

  const Path prefix(path.begin(), path.end() - 1);
  const Path tail{last};
  auto [inner, kept] = select(work, prefix, sum_on(work, prefix));
  return cover_first(prefix, inner, q, k, moves) + kept + rest;
}

// `pool` holds exactly q(2^m - 1) pebbles on the path and nothing else.
Pool cover_path(Path path, const Pool& pool, std::uint64_t q,
                std::vector<PebblingMove>& moves) {
  const std::size_t m = path.size();
  if (covered_on(pool, path, q)) return pool;
  if (m == 1) throw ConstructionFailed("single vertex path below q");

  if (pool.vertex_total(path.front()) > pool.vertex_total(path.back()))
    std::reverse(path.begin(), path.end());
  const std::uint64_t k = pool.vertex_total(path.front());

  if (k <= q) {
    // Cover V_2..V_m with q(2^(m-1) - 1) of its own pebbles, then bring V_1 up.
    const Path tail(path.begin() + 1, path.end());
    auto [sub, rest] = select(pool, tail, path_need(q, m - 1));
    Pool state = cover_path(tail, sub, q, moves) + rest;
    if (k < q) state = cover_first(path, state, q, k, moves);
    return state;
  }

  // Longest prefix V_1..V_s with every V_1..V_i holding q(2^i - 1).
  std::size_t s = 0;
  std::uint64_t prefix_sum = 0;
  while (s < m) {
    prefix_sum += pool.vertex_total(path[s]);
    if (prefix_sum < path_need(q, s + 1)) break;
    ++s;
  }
  if (s == 0) throw ConstructionFailed("first vertex above q but prefix unsaturated");

  if (s + 1 >= m) {
    // V_m already holds more than q; the first m-1 vertices cover themselves.
    const Path head(path.begin(), path.end() - 1);
    auto [sub, rest] = select(pool, head, path_need(q, m - 1));
    return cover_path(head, sub, q, moves) + rest;
  }

  const Path head(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(s));
  const Path tail(path.begin() + static_cast<std::ptrdiff_t>(s), path.end());
  auto [head_pool, after_head] = select(pool, head, path_need(q, s));
  auto [tail_pool, rest] = select(after_head, tail, path_need(q, m - s));
  Pool state = cover_path(head, head_pool, q, moves);
  return state + cover_path(tail, tail_pool, q, moves) + rest;
}

Path iota_path(std::size_t n) {
  Path p(n);
  for (Vertex v = 0; v < n; ++v) p[v] = v;
  return p;
}

Path arc(std::size_t n, Vertex start, std::size_t length) {
  Path p(length);
  for (std::size_t i = 0; i < length; ++i) p[i] = (start + i) % n;
  return p;
}

void check_colors(const ColoredDistribution& d, std::uint64_t q) {
  const std::size_t colors = d.colors_present();
  if (q == 0) throw InvalidArgument("q must be positive");
  // The pair-extraction step needs |V| - q <= |V| - t', so t' <= q suffices.
  if (colors > q)
    throw InvalidArgument("needs at most q colors present (" + std::to_string(colors) +
                          " colors, q = " + std::to_string(q) + ")");
}

StrategyOutcome finish(const Graph& host, const ColoredDistribution& initial,
                       std::vector<PebblingMove> moves, std::uint64_t q) {
  StrategyOutcome out{Trace{initial, std::move(moves)}, {}};
  try {
    out.achieved = replay(host, out.trace);
  } catch (const IllegalMove& e) {
    throw ConstructionFailed(std::string("strategy trace does not replay: ") + e.what());
  }
  if (!is_q_covered(out.achieved, q))
    throw ConstructionFailed("strategy trace does not reach a q-cover");
  return out;
}

struct CycleRun {
  Pool state;
  std::vector<PebblingMove> moves;
};

std::uint64_t cycle_need(std::uint64_t q, std::size_t n) {
  return checked_mul(q, gamma_cycle(n));
}

std::optional<CycleRun> partition_branch(const Pool& work, std::uint64_t q) {
  const std::size_t n = work.vertex_count();
  for (Vertex a = 0; a < n; ++a) {
    for (std::size_t s = 1; s < n; ++s) {
      const Path first = arc(n, a, s);
      const Path second = arc(n, a + s, n - s);
      if (sum_on(work, first) < path_need(q, s) ||
          sum_on(work, second) < path_need(q, n - s))
        continue;
      CycleRun run;
      auto [p1, after] = select(work, first, path_need(q, s));
      auto [p2, rest] = select(after, second, path_need(q, n - s));
      Pool a1 = cover_path(first, p1, q, run.moves);
      Pool a2 = cover_path(second, p2, q, run.moves);
      run.state = a1 + a2 + rest;
      return run;
    }
  }
  return std::nullopt;
}

std::optional<CycleRun> odd_transfer_branch(const Pool& work, std::uint64_t q) {
  const std::size_t n = work.vertex_count();
  if (n % 2 == 0) return std::nullopt;
  const std::size_t r = (n + 1) / 2;
  const std::uint64_t saturated = path_need(q, r);
  const std::uint64_t half = path_need(q, r - 1);

  for (Vertex a = 0; a < n; ++a) {
    // Labeling V'_k = a + k - 1.
    auto label = [&](std::size_t k) { return (a + k - 1) % n; };
    const Vertex v1 = label(1), vr = label(r), vn = label(n);
    if (sum_on(work, arc(n, v1, r)) < saturated) continue;
    if (sum_on(work, arc(n, vr, r)) < saturated) continue;
    if (sum_on(work, arc(n, label(r + 1), r)) < saturated) continue;

    const std::uint64_t x = work.vertex_total(v1);
    if (x < checked_add(2 * q, half) || 2 * q + work.colors_present_at(v1) > x) continue;
    if (work.vertex_total(vr) < half) continue;

    CycleRun run;
    Pool state = work;
    move_pairs(state, v1, vn, pairs_or_fail(state, v1, static_cast<std::int64_t>(2 * q)),
               run.moves);
    const Path left = arc(n, v1, r - 1);   // V'_1..V'_{r-1}
    const Path right = arc(n, vr, r - 1);  // V'_r..V'_{n-1}
    const Path only_v1{v1};
    const Path only_vr{vr};
    auto [p1, after] = select(state, only_v1, half);
    auto [p2, rest] = select(after, only_vr, half);
    Pool a1 = cover_path(left, p1, q, run.moves);
    Pool a2 = cover_path(right, p2, q, run.moves);
    run.state = a1 + a2 + rest;
    return run;
  }
  return std::nullopt;
}

std::optional<detail::MainLabeling> main_labeling(const Pool& work, std::uint64_t q) {
  const std::size_t n = work.vertex_count();
  const std::size_t r = (n + 1) / 2;
  const std::uint64_t saturated = path_need(q, r);
  auto window = [&](Vertex start) { return sum_on(work, arc(n, start, r)); };

  std::optional<detail::MainLabeling> best;
  for (Vertex s = 0; s < n; ++s) {
    if (work.vertex_total(s) == 0 || window(s) < saturated) continue;
    for (std::size_t d = 1; d <= r; ++d) {
      const Vertex u = (s + d) % n;
      if (window(u) < saturated) {
        if (!best || d < best->offset) best = detail::MainLabeling{s, d};
        break;
      }
      // A support vertex before any unsaturated window: not a minimal pair.
      if (work.vertex_total(u) > 0) break;
    }
  }
  return best;
}

std::optional<CycleRun> main_branch(const Pool& work, std::uint64_t q) {
  const std::size_t n = work.vertex_count();
  const std::size_t r = (n + 1) / 2;
  const auto labeling = main_labeling(work, q);
  if (!labeling) return std::nullopt;

  const Vertex v1 = labeling->start;
  const Path first = arc(n, v1, r);                   // V_1..V_r
  const Path inner(first.begin() + 1, first.end());   // V_2..V_r
  const std::uint64_t inner_sum = sum_on(work, inner);
  const std::uint64_t need1 = path_need(q, r);
  if (inner_sum > need1 || need1 - inner_sum > work.vertex_total(v1)) return std::nullopt;

  CycleRun run;
  // All of V_2..V_r plus a = q(2^r - 1) - |V_2..V_r| pebbles from V_1.
  Path order = inner;
  order.push_back(v1);
  auto [p1, rest1] = select(work, order, need1);
  Pool covered1 = cover_path(first, p1, q, run.moves);

  // V_{r+1},...,V_n,V_1 with the b untouched pebbles and q from the cover.
  Path second = arc(n, (v1 + r) % n, n - r);
  second.push_back(v1);
  const Path only_v1{v1};
  auto [from_cover, kept] = select(covered1, only_v1, q);
  Pool p2 = rest1 + from_cover;
  const std::uint64_t need2 = path_need(q, n - r + 1);
  if (sum_on(p2, second) < need2)
    throw ConstructionFailed("second arc of the cycle construction is short");
  auto [work2, rest2] = select(p2, second, need2);
  run.state = kept + cover_path(second, work2, q, run.moves) + rest2;
  return run;
}

using Branch = std::optional<CycleRun> (*)(const Pool&, std::uint64_t);

std::optional<StrategyOutcome> run_cycle_branch(const ColoredDistribution& d,
                                                std::uint64_t q, Branch branch) {
  const std::size_t n = d.vertex_count();
  if (n < 3) throw InvalidArgument("cycle needs at least three vertices");
  check_colors(d, q);
  const std::uint64_t need = cycle_need(q, n);
  if (d.total() < need)
    throw InvalidArgument("cycle strategy needs " + std::to_string(need) + " pebbles, got " +
                          std::to_string(d.total()));
  auto [work, rest] = select(d, iota_path(n), need);
  auto run = branch(work, q);
  if (!run) return std::nullopt;
  return finish(build_cycle(n), d, std::move(run->moves), q);
}

}  // namespace

std::vector<PairSelection> extract_pairs(std::span<const Count> per_color, std::int64_t e) {
  std::uint64_t m = 0;
  std::int64_t present = 0;
  for (Count c : per_color) {
    m += c;
    if (c > 0) ++present;
  }
  if (e < 0) throw InvalidArgument("extract_pairs: E must be non-negative");
  if (e > static_cast<std::int64_t>(m) - present)
    throw InvalidArgument("extract_pairs: E = " + std::to_string(e) + " exceeds M - t' = " +
                          std::to_string(static_cast<std::int64_t>(m) - present));

  // Drop one pebble from every odd color; what remains splits into pairs.
  std::uint64_t wanted = static_cast<std::uint64_t>(e) / 2;
  std::vector<PairSelection> out;
  for (Color c = 0; c < per_color.size() && wanted > 0; ++c) {
    const std::uint64_t available = per_color[c] / 2;
    const std::uint64_t k = std::min(available, wanted);
    if (k > 0) out.push_back({c, static_cast<Count>(k)});
    wanted -= k;
  }
  if (wanted != 0) throw InternalError("extract_pairs: even part smaller than M - t'");
  return out;
}

std::vector<WindowClassification> classify_windows(const ColoredDistribution& d,
                                                   std::uint64_t q) {
  const std::size_t n = d.vertex_count();
  if (n < 3) throw InvalidArgument("classify_windows needs a cycle (n >= 3)");
  const std::size_t r = (n + 1) / 2;
  std::vector<WindowClassification> out;
  for (Vertex s = 0; s < n; ++s)
    out.push_back({s, r, sum_on(d, arc(n, s, r)) >= path_need(q, r), d.vertex_total(s) > 0});
  return out;
}

StrategyOutcome cover_v1(const ColoredDistribution& d, std::uint64_t q, std::uint64_t k) {
  const std::size_t m = d.vertex_count();
  if (m < 2) throw InvalidArgument("cover_v1 needs a path with at least two vertices");
  if (q <= k) throw InvalidArgument("cover_v1 needs q > k");
  if (d.colors_present() > q) throw InvalidArgument("cover_v1 needs q >= colors present");
  if (d.vertex_total(0) != k) throw InvalidArgument("cover_v1: first vertex must hold k");
  for (Vertex v = 1; v < m; ++v)
    if (d.vertex_total(v) < q)
      throw InvalidArgument("cover_v1: vertex " + std::to_string(v) + " holds fewer than q");
  const std::uint64_t need = checked_add(checked_mul(q, m - 1), checked_mul(pow2(m - 1), q));
  if (d.total() < need)
    throw InvalidArgument("cover_v1 needs " + std::to_string(need) + " pebbles");

  std::vector<PebblingMove> moves;
  cover_first(iota_path(m), d, q, k, moves);
  return finish(build_path(m), d, std::move(moves), q);
}

StrategyOutcome q_cover_path(const ColoredDistribution& d, std::uint64_t q) {
  const std::size_t n = d.vertex_count();
  if (n == 0) throw InvalidArgument("path needs at least one vertex");
  check_colors(d, q);
  const std::uint64_t need = path_need(q, n);
  if (d.total() < need)
    throw InvalidArgument("path strategy needs " + std::to_string(need) + " pebbles, got " +
                          std::to_string(d.total()));
  std::vector<PebblingMove> moves;
  if (!is_q_covered(d, q)) {
    const Path path = iota_path(n);
    auto [work, rest] = select(d, path, need);
    cover_path(path, work, q, moves);
  }
  return finish(build_path(n), d, std::move(moves), q);
}

StrategyOutcome q_cover_cycle(const ColoredDistribution& d, std::uint64_t q) {
  const std::size_t n = d.vertex_count();
  if (n < 3) throw InvalidArgument("cycle needs at least three vertices");
  if (is_q_covered(d, q)) {
    check_colors(d, q);
    if (d.total() < cycle_need(q, n)) throw InvalidArgument("cycle strategy: too few pebbles");
    return finish(build_cycle(n), d, {}, q);
  }
  for (Branch branch : {&partition_branch, &odd_transfer_branch, &main_branch})
    if (auto out = run_cycle_branch(d, q, branch)) return std::move(*out);
  throw ConstructionFailed("no cycle construction applies");
}

namespace detail {

std::optional<StrategyOutcome> cycle_partition_branch(const ColoredDistribution& d,
                                                      std::uint64_t q) {
  return run_cycle_branch(d, q, &partition_branch);
}

std::optional<StrategyOutcome> cycle_odd_transfer_branch(const ColoredDistribution& d,
                                                         std::uint64_t q) {
  return run_cycle_branch(d, q, &odd_transfer_branch);
}

std::optional<StrategyOutcome> cycle_main_branch(const ColoredDistribution& d,
                                                 std::uint64_t q) {
  return run_cycle_branch(d, q, &main_branch);
}

std::optional<MainLabeling> find_main_labeling(const ColoredDistribution& d,
                                               std::uint64_t q) {
  if (d.vertex_count() < 3) throw InvalidArgument("cycle needs at least three vertices");
  return main_labeling(d, q);
}

}  // namespace detail

StrategyOutcome cover_product(const Distribution& d, const Graph& g, const Graph& h,
                              const SolverBudget& budget,
                              std::optional<std::uint64_t> gamma_g) {
  const bool is_cycle = h.family() == Family::cycle;
  if (!is_cycle && h.family() != Family::path)
    throw InvalidArgument("cover_product: second factor must be a path or a cycle");
  const std::size_t gn = g.vertex_count();
  const std::size_t hn = h.vertex_count();
  if (d.size() != gn * hn)
    throw InvalidArgument("cover_product: distribution does not match the product");

  const std::uint64_t q = gamma_g ? *gamma_g
                          : has_gamma_formula(g) ? gamma_formula(g)
                                                 : gamma_exact(g, budget).gamma;
  const std::uint64_t gamma_h = is_cycle ? gamma_cycle(hn) : gamma_path(hn);
  const std::uint64_t need = checked_mul(q, gamma_h);
  if (d.total() < need)
    throw InvalidArgument("cover_product needs " + std::to_string(need) + " pebbles, got " +
                          std::to_string(d.total()));

  const ColoredDistribution colored = associate(d, g, h);
  const StrategyOutcome fibers =
      is_cycle ? q_cover_cycle(colored, q) : q_cover_path(colored, q);
  Trace trace = lift_moves(fibers.trace, g, h);

  const Graph product = cartesian_product(g, h);
  const ColoredDistribution after_lift = replay(product, trace);
  CoverSolver solver(g, budget);
  for (Vertex j = 0; j < hn; ++j) {
    // Any q pebbles of the fiber suffice; cover G x {v_j} from those.
    Distribution fiber(gn);
    std::uint64_t remaining = q;
    for (Vertex i = 0; i < gn && remaining > 0; ++i) {
      const auto k = static_cast<Count>(
          std::min<std::uint64_t>(after_lift.at(i * hn + j, 0), remaining));
      fiber[i] = k;
      remaining -= k;
    }
    if (remaining != 0)
      throw ConstructionFailed("fiber " + std::to_string(j) + " holds fewer than q pebbles");
    const CoverReport report = solver.decide(fiber);
    if (!report.coverable)
      throw ConstructionFailed("fiber " + std::to_string(j) +
                               " with gamma(G) pebbles is not coverable");
    for (const auto& m : report.trace->moves)
      trace.moves.push_back({m.from * hn + j, m.to * hn + j, 0});
  }
  return finish(product, trace.initial, std::move(trace.moves), 1);
}

StrategyFuzzResult fuzz_strategy(const StrategyFuzzConfig& config) {
  std::mt19937_64 rng(config.seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  const std::size_t min_n = config.cycle ? 3 : 1;
  const std::uint64_t min_q = config.colors_up_to_q ? 1 : 2;
  if (config.max_vertices < min_n || config.max_q < min_q)
    throw InvalidArgument("fuzz: vertex or q range is empty");

  StrategyFuzzResult result;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const std::size_t n = uniform(min_n, config.max_vertices);
    const std::uint64_t q = uniform(min_q, config.max_q);
    const std::size_t t = uniform(1, config.colors_up_to_q ? q : q - 1);
    const std::uint64_t total = config.cycle ? cycle_need(q, n) : path_need(q, n);

    // Random support of k cells, then a random composition over them.
    ColoredDistribution d(n, t);
    const std::size_t cells = n * t;
    const std::size_t k = uniform(1, cells);
    std::vector<std::size_t> order(cells);
    for (std::size_t i = 0; i < cells; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint64_t> cuts{0, total};
    for (std::size_t i = 1; i < k; ++i) cuts.push_back(uniform(0, total));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < k; ++i)
      d.at(order[i] / t, order[i] % t) += static_cast<Count>(cuts[i + 1] - cuts[i]);

    ++result.runs;
    try {
      const StrategyOutcome out = config.cycle ? q_cover_cycle(d, q) : q_cover_path(d, q);
      const Graph host = config.cycle ? build_cycle(n) : build_path(n);
      const ColoredDistribution final_state = replay(host, out.trace);
      if (!is_q_covered(final_state, q))
        ++result.not_covered;
      else
        ++result.succeeded;
    } catch (const ConstructionFailed&) {
      ++result.construction_failed;
    } catch (const IllegalMove&) {
      ++result.replay_failed;
    }
  }
  return result;
}

}  // namespace pebble
