#include "pebble/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>

#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"

namespace pebble {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return v;
}

struct CandidateMove {
  Vertex from;
  Vertex to;
  unsigned rank;  // lower is tried first
  std::uint64_t tiebreak;
};

}  // namespace

SolverBudget SolverBudget::from_env() {
  SolverBudget b;
  b.max_states = env_u64("PEBBLE_MAX_STATES", b.max_states);
  b.max_pebbles = env_u64("PEBBLE_MAX_PEBBLES", b.max_pebbles);
  return b;
}

struct CoverSolver::Impl {
  Impl(const Graph& graph, SolverBudget b, SolverOptions o)
      : g(graph), budget(b), options(o), n(graph.vertex_count()) {
    bits = static_cast<unsigned>(std::bit_width(budget.max_pebbles));
    packable = n * bits <= 64;
    required.resize(n);
    for (Vertex r = 0; r < n; ++r) {
      std::uint64_t s = 0;
      for (Vertex u = 0; u < n; ++u) s += std::uint64_t{1} << (g.diameter() - g.distance(u, r));
      required[r] = s;
    }
  }

  Graph g;
  SolverBudget budget;
  SolverOptions options;
  std::size_t n;
  unsigned bits = 0;
  bool packable = false;
  std::vector<std::uint64_t> required;

  std::unordered_set<std::uint64_t> memo_packed;
  std::unordered_set<std::string> memo_wide;

  std::vector<Count> state;
  std::vector<PebblingMove> stack;
  std::uint64_t states = 0;

  std::size_t memo_size() const { return memo_packed.size() + memo_wide.size(); }

  std::uint64_t pack() const {
    std::uint64_t key = 0;
    for (Count c : state) key = (key << bits) | c;
    return key;
  }

  std::string wide_key() const {
    return std::string(reinterpret_cast<const char*>(state.data()),
                       state.size() * sizeof(Count));
  }

  bool memo_contains() const {
    if (!options.memoize) return false;
    return packable ? memo_packed.contains(pack()) : memo_wide.contains(wide_key());
  }

  void memo_insert() {
    if (!options.memoize || memo_size() >= budget.memo_cap) return;
    if (packable)
      memo_packed.insert(pack());
    else
      memo_wide.insert(wide_key());
  }

  bool potential_blocked() const {
    for (Vertex r = 0; r < n; ++r)
      if (scaled_potential(g, state, r) < required[r]) return true;
    return false;
  }

  std::vector<CandidateMove> candidate_moves() const {
    std::vector<CandidateMove> moves;
    for (Vertex v = 0; v < n; ++v) {
      if (state[v] < 2) continue;
      // Nearest uncovered vertex, smallest index on ties.
      std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
      Vertex target = v;
      for (Vertex t = 0; t < n; ++t)
        if (state[t] == 0 && g.distance(v, t) < best) {
          best = g.distance(v, t);
          target = t;
        }
      for (Vertex u : g.neighbors(v)) {
        unsigned rank = 1;
        if (options.heuristic_order && state[target] == 0 &&
            g.distance(u, target) < g.distance(v, target))
          rank = 0;
        // Larger surplus first.
        const std::uint64_t tie = options.heuristic_order
                                      ? (std::uint64_t{~state[v]} << 32) | (v << 16) | u
                                      : (v << 16) | u;
        moves.push_back({v, u, rank, tie});
      }
    }
    std::sort(moves.begin(), moves.end(), [](const CandidateMove& a, const CandidateMove& b) {
      return a.rank != b.rank ? a.rank < b.rank : a.tiebreak < b.tiebreak;
    });
    return moves;
  }

  bool search(std::uint64_t total, std::size_t uncovered) {
    if (uncovered == 0) return true;
    if (++states > budget.max_states)
      throw ResourceLimit("coverability search exceeded " +
                          std::to_string(budget.max_states) + " states");
    if (total < n) return false;
    if (memo_contains()) return false;
    if (options.potential_prune && potential_blocked()) return false;

    for (const auto& m : candidate_moves()) {
      state[m.from] -= 2;
      std::size_t next_uncovered = uncovered;
      if (state[m.from] == 0) ++next_uncovered;
      if (state[m.to] == 0) --next_uncovered;
      state[m.to] += 1;
      stack.push_back({m.from, m.to, 0});

      if (search(total - 1, next_uncovered)) return true;

      stack.pop_back();
      state[m.to] -= 1;
      state[m.from] += 2;
    }
    memo_insert();
    return false;
  }

  CoverReport decide(const Distribution& d) {
    if (d.size() != n)
      throw InvalidArgument("distribution has " + std::to_string(d.size()) +
                            " entries, graph has " + std::to_string(n) + " vertices");
    const std::uint64_t total = d.total();
    if (total > budget.max_pebbles)
      throw ResourceLimit("distribution of " + std::to_string(total) +
                          " pebbles exceeds the pebble budget of " +
                          std::to_string(budget.max_pebbles));
    state = d.counts();
    stack.clear();
    states = 0;
    const auto uncovered = static_cast<std::size_t>(
        std::count(state.begin(), state.end(), Count{0}));

    CoverReport report;
    report.coverable = search(total, uncovered);
    report.states_explored = states;
    if (report.coverable) {
      Trace trace{ColoredDistribution::from_plain(d), stack};
      if (!is_q_covered(replay(g, trace), 1))
        throw InternalError("coverability witness does not cover the graph");
      report.trace = std::move(trace);
    }
    return report;
  }
};

CoverSolver::CoverSolver(const Graph& g, SolverBudget budget, SolverOptions options)
    : impl_(std::make_unique<Impl>(g, budget, options)) {}
CoverSolver::~CoverSolver() = default;
CoverSolver::CoverSolver(CoverSolver&&) noexcept = default;
CoverSolver& CoverSolver::operator=(CoverSolver&&) noexcept = default;

CoverReport CoverSolver::decide(const Distribution& d) { return impl_->decide(d); }
std::size_t CoverSolver::memo_size() const noexcept { return impl_->memo_size(); }

CoverReport decide_coverable(const Graph& g, const Distribution& d,
                             const SolverBudget& budget, const SolverOptions& options) {
  CoverSolver solver(g, budget, options);
  return solver.decide(d);
}

CompositionStream::CompositionStream(std::size_t n, std::uint64_t total)
    : n_(n), total_(total), current_(n, 0) {
  if (n == 0) done_ = true;
}

bool CompositionStream::next(std::vector<Count>& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    current_[0] = static_cast<Count>(total_);
    out = current_;
    return true;
  }
  // Descending lexicographic successor: take one unit from the rightmost
  // non-zero part before the last and put it, plus the old tail, right after.
  std::size_t pivot = n_;
  for (std::size_t k = n_ - 1; k-- > 0;)
    if (current_[k] > 0) {
      pivot = k;
      break;
    }
  if (pivot == n_) {
    done_ = true;
    return false;
  }
  const Count tail = current_[n_ - 1];
  current_[n_ - 1] = 0;
  current_[pivot] -= 1;
  current_[pivot + 1] = tail + 1;
  out = current_;
  return true;
}

std::vector<Distribution> enumerate_distributions(std::size_t n, std::uint64_t total) {
  std::vector<Distribution> out;
  CompositionStream stream(n, total);
  std::vector<Count> buf;
  while (stream.next(buf)) out.emplace_back(buf);
  return out;
}

std::uint64_t composition_count(std::size_t n, std::uint64_t total) {
  if (n == 0) return 0;
  // C(total + n - 1, n - 1), built incrementally so every step is exact.
  std::uint64_t result = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    const std::uint64_t num = total + k;
    const std::uint64_t g = std::gcd(result, k);
    result = checked_mul(result / g, num / (k / g));
  }
  return result;
}

GammaReport gamma_exact(const Graph& g, const SolverBudget& budget) {
  const GoodnessBound bound = goodness_bound(g);
  CoverSolver solver(g, budget);
  GammaReport report;
  report.lower_bound = bound.value;

  std::optional<Distribution> last_failure;
  std::vector<Count> buf;
  for (std::uint64_t total = bound.value;; ++total) {
    if (total > budget.max_pebbles)
      throw ResourceLimit("gamma search passed the pebble budget of " +
                          std::to_string(budget.max_pebbles));
    bool all_coverable = true;
    CompositionStream stream(g.vertex_count(), total);
    while (stream.next(buf)) {
      ++report.distributions_checked;
      Distribution d(buf);
      if (!solver.decide(d).coverable) {
        last_failure = std::move(d);
        all_coverable = false;
        break;
      }
    }
    if (all_coverable) {
      report.gamma = total;
      break;
    }
  }

  report.good = report.gamma == bound.value;
  if (report.good) {
    report.key_vertex = bound.key_vertex;
    report.witness = Distribution::simple(g.vertex_count(), bound.key_vertex,
                                          static_cast<Count>(bound.value - 1));
    if (solver.decide(report.witness).coverable)
      throw InternalError("simple distribution below the goodness bound is coverable");
  } else {
    report.witness = *last_failure;
  }
  return report;
}

GammaReport is_good(const Graph& g, const SolverBudget& budget) {
  return gamma_exact(g, budget);
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::good: return "good";
    case Verdict::not_good: return "not-good";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

std::vector<Graph> connected_labeled_graphs(std::size_t n) {
  if (n == 0) return {};
  std::vector<Edge> pairs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  if (pairs.size() >= 31) throw ResourceLimit("too many vertices to enumerate graphs");

  std::vector<Graph> out;
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  std::vector<Vertex> parent(n);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = n;
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      edges.push_back(pairs[k]);
      const Vertex a = find(pairs[k].first);
      const Vertex b = find(pairs[k].second);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components == 1) out.push_back(Graph::from_edges(n, std::move(edges)));
  }
  return out;
}

SweepReport sweep_goodness(const SweepOptions& options, const SolverBudget& budget) {
  if (options.max_vertices == 0 || options.min_vertices > options.max_vertices)
    throw InvalidArgument("sweep: empty vertex range");
  if (options.max_vertices > 5 || (options.max_vertices == 5 && !options.allow_five))
    throw InvalidArgument("sweep: max vertices is 4 (5 with the explicit flag)");

  std::vector<Graph> graphs;
  for (std::size_t n = std::max<std::size_t>(options.min_vertices, 1);
       n <= options.max_vertices; ++n) {
    std::unordered_set<std::uint64_t> seen;
    for (auto& g : connected_labeled_graphs(n)) {
      if (options.dedup && !seen.insert(canonical_form(g)).second) continue;
      graphs.push_back(std::move(g));
    }
  }

  SweepReport report;
  report.entries.resize(graphs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < graphs.size(); i = next++) {
      const Graph& g = graphs[i];
      SweepEntry& e = report.entries[i];
      e.vertices = g.vertex_count();
      e.edges = g.edges();
      e.lower_bound = goodness_bound(g).value;
      try {
        const GammaReport r = is_good(g, budget);
        e.gamma = r.gamma;
        e.verdict = r.good ? Verdict::good : Verdict::not_good;
      } catch (const ResourceLimit&) {
        e.verdict = Verdict::unknown;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, graphs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (const auto& e : report.entries) {
    if (e.verdict == Verdict::not_good) ++report.counterexamples;
    if (e.verdict == Verdict::unknown) ++report.unknown;
  }
  return report;
}

ProductCheck check_product_equality(const Graph& g, const Graph& h,
                                    const SolverBudget& budget) {
  const Graph product = cartesian_product(g, h);
  ProductCheck out;
  out.gamma_g = gamma_exact(g, budget).gamma;
  out.gamma_h = gamma_exact(h, budget).gamma;
  const GammaReport rp = gamma_exact(product, budget);
  out.gamma_product = rp.gamma;
  out.product_good = rp.good;
  out.equal = out.gamma_product == checked_mul(out.gamma_g, out.gamma_h);

  const GoodnessBound bg = goodness_bound(g);
  const GoodnessBound bh = goodness_bound(h);
  out.paired_key = bg.key_vertex * h.vertex_count() + bh.key_vertex;
  out.paired_sigma = sigma(product, out.paired_key);
  out.paired_sigma_matches = out.paired_sigma == checked_mul(bg.value, bh.value);
  const auto blocked = Distribution::simple(product.vertex_count(), out.paired_key,
                                            static_cast<Count>(out.paired_sigma - 1));
  out.paired_witness_blocked = !decide_coverable(product, blocked, budget).coverable;
  return out;
}

std::string sweep_to_tsv(const SweepReport& report) {
  std::ostringstream out;
  out << "vertices\tedges\tverdict\tgamma\tlower_bound\n";
  for (const auto& e : report.entries) {
    out << e.vertices << '\t';
    if (e.edges.empty()) out << '-';
    for (std::size_t k = 0; k < e.edges.size(); ++k)
      out << (k ? " " : "") << e.edges[k].first << '-' << e.edges[k].second;
    out << '\t' << to_string(e.verdict) << '\t';
    if (e.verdict == Verdict::unknown)
      out << '-';
    else
      out << e.gamma;
    out << '\t' << e.lower_bound << '\n';
  }
  return out.str();
}

}  // namespace pebble
