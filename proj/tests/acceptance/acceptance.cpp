// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pebble/distribution.hpp"
#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"
#include "pebble/graph.hpp"
#include "pebble/solver.hpp"
#include "pebble/strategy.hpp"

using namespace pebble;

namespace {

// Wall-clock ceilings, in seconds.
constexpr double kFormulaSeconds = 1.0;
constexpr double kBruteForceSeconds = 120.0;
constexpr double kProductSeconds = 1800.0;
constexpr double kSweepSeconds = 600.0;

constexpr std::uint64_t kSeed = 20240601;

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const char* title, double ceiling, const std::function<void(Result&)>& body) {
  Result r;
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (ceiling > 0 && secs > ceiling) {
    std::ostringstream msg;
    msg << "took " << secs << " s, limit " << ceiling << " s";
    r.expect(false, msg.str());
  }
  if (!r.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", r.pass ? "PASS" : "FAIL", id, title, secs,
              r.pass ? "" : " -- ", r.detail.str().c_str());
  std::fflush(stdout);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

struct Named {
  const char* name;
  Graph graph;
};

std::vector<Named> small_graphs() {
  return {{"P2", build_path(2)},    {"P3", build_path(3)},    {"P4", build_path(4)},
          {"C3", build_cycle(3)},   {"C4", build_cycle(4)},   {"C5", build_cycle(5)},
          {"K3", build_complete(3)}, {"K4", build_complete(4)}, {"star4", build_star(4)}};
}

// Exactly `total` pebbles over the cells of an n x t grid.
ColoredDistribution colored_input(std::mt19937_64& rng, std::size_t n, std::size_t t,
                                  std::uint64_t total) {
  ColoredDistribution d(n, t);
  const auto parts = oracle::random_composition(rng, n * t, static_cast<unsigned>(total));
  // Sparse inputs are where the constructions branch most, so zero out a
  // random share of cells and push their pebbles onto a surviving one.
  std::bernoulli_distribution drop(0.6);
  std::size_t keep = std::uniform_int_distribution<std::size_t>(0, n * t - 1)(rng);
  std::uint64_t moved = 0;
  for (std::size_t i = 0; i < n * t; ++i) {
    if (i != keep && drop(rng)) {
      moved += parts[i];
      continue;
    }
    d.at(i / t, i % t) = parts[i];
  }
  d.at(keep / t, keep % t) += static_cast<Count>(moved);
  return d;
}

void run_strategy_batch(Result& r, bool cycle) {
  std::mt19937_64 rng(kSeed + (cycle ? 1 : 0));
  std::size_t failed = 0, construction = 0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(cycle ? 3 : 1, cycle ? 7 : 6)(rng);
    const std::uint64_t q = std::uniform_int_distribution<std::uint64_t>(2, 8)(rng);
    const std::size_t t = std::uniform_int_distribution<std::size_t>(1, q - 1)(rng);
    const std::uint64_t total = q * (cycle ? gamma_cycle(n) : gamma_path(n));
    const auto d = colored_input(rng, n, t, total);
    const Graph host = cycle ? build_cycle(n) : build_path(n);
    try {
      const auto out = cycle ? q_cover_cycle(d, q) : q_cover_path(d, q);
      const auto final_state = replay(host, out.trace);
      if (!is_q_covered(final_state, q)) ++failed;
    } catch (const ConstructionFailed&) {
      ++construction;
    } catch (const IllegalMove&) {
      ++failed;
    }
  }
  r.expect(construction == 0, str(construction) + (cycle ? " cycle" : " path") + " constructions failed");
  r.expect(failed == 0, str(failed) + (cycle ? " cycle" : " path") + " traces did not cover");
}

std::vector<PebblingMove> legal_moves(const Graph& g, const ColoredDistribution& d) {
  std::vector<PebblingMove> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Color c = 0; c < d.color_count(); ++c)
      if (d.at(v, c) >= 2)
        for (Vertex w : g.neighbors(v)) out.push_back({v, w, c});
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance suite, seed %llu\n", static_cast<unsigned long long>(kSeed));

  criterion(1, "closed-form values for paths, cycles and complete graphs", kFormulaSeconds, [](Result& r) {
    for (std::size_t n = 1; n <= 10; ++n) {
      r.expect(gamma_path(n) == (std::uint64_t{1} << n) - 1, "path " + str(n));
      r.expect(gamma_complete(n) == 2 * n - 1, "complete " + str(n));
    }
    const std::uint64_t cycles[] = {5, 9, 13, 21, 29, 45};
    for (std::size_t n = 3; n <= 8; ++n) r.expect(gamma_cycle(n) == cycles[n - 3], "cycle " + str(n));
  });

  criterion(2, "exact search matches the formulas and every graph is good", kBruteForceSeconds,
            [](Result& r) {
              for (const auto& [name, g] : small_graphs()) {
                const auto rep = gamma_exact(g);
                const auto formula = gamma_formula(g);
                r.expect(rep.gamma == formula,
                         std::string(name) + ": exact " + str(rep.gamma) + " vs " + str(formula));
                r.expect(rep.good, std::string(name) + " not good");
              }
            });

  criterion(3, "products P2xP2, P2xP3, P2xK3 equal the product of factor values", kProductSeconds,
            [](Result& r) {
              const struct {
                Graph g, h;
                std::uint64_t expect;
              } cases[] = {{build_path(2), build_path(2), 9},
                           {build_path(2), build_path(3), 21},
                           {build_path(2), build_complete(3), 15}};
              for (const auto& c : cases) {
                const auto rep = check_product_equality(c.g, c.h);
                r.expect(rep.gamma_product == c.expect,
                         "product value " + str(rep.gamma_product) + ", expected " + str(c.expect));
                r.expect(rep.gamma_product == rep.gamma_g * rep.gamma_h, "not multiplicative");
                r.expect(rep.equal && rep.product_good, "product not good");
              }
            });

  criterion(4, "every connected labeled graph on at most 4 vertices is good", kSweepSeconds, [](Result& r) {
    SweepOptions o;
    o.min_vertices = 1;
    o.max_vertices = 4;
    o.dedup = false;
    const auto rep = sweep_goodness(o);
    r.expect(rep.entries.size() == 44, "swept " + str(rep.entries.size()) + " graphs, expected 44");
    r.expect(rep.counterexamples == 0, str(rep.counterexamples) + " counterexamples");
    r.expect(rep.unknown == 0, str(rep.unknown) + " unknown verdicts");
  });

  criterion(5, "path and cycle constructions on 1000 exact-budget inputs each", 0, [](Result& r) {
    run_strategy_batch(r, false);
    run_strategy_batch(r, true);
  });

  criterion(6, "product pipeline on 200 distributions per product", 0, [](Result& r) {
    const struct {
      const char* name;
      Graph g, h;
    } cases[] = {{"P2xP2", build_path(2), build_path(2)},
                 {"P2xP3", build_path(2), build_path(3)},
                 {"K3xP2", build_complete(3), build_path(2)},
                 {"P1xC5", build_path(1), build_cycle(5)}};
    std::mt19937_64 rng(kSeed + 6);
    for (const auto& c : cases) {
      const Graph product = cartesian_product(c.g, c.h);
      const std::uint64_t total = gamma_formula(c.g) * gamma_formula(c.h);
      std::size_t bad = 0;
      for (int it = 0; it < 200; ++it) {
        const auto parts = oracle::random_composition(rng, product.vertex_count(), static_cast<unsigned>(total));
        const Distribution d(std::vector<Count>(parts.begin(), parts.end()));
        try {
          const auto out = cover_product(d, c.g, c.h);
          if (!is_q_covered(replay(product, out.trace), 1)) ++bad;
        } catch (const Error&) {
          ++bad;
        }
      }
      r.expect(bad == 0, std::string(c.name) + ": " + str(bad) + " failures");
    }
  });

  criterion(7, "gamma - 1 pebbles on the key vertex cannot cover", 0, [](Result& r) {
    for (const auto& [name, g] : small_graphs()) {
      const auto bound = goodness_bound(g);
      const std::uint64_t gamma = gamma_formula(g);
      const auto d = Distribution::simple(g.vertex_count(), bound.key_vertex, static_cast<Count>(gamma - 1));
      r.expect(!decide_coverable(g, d).coverable, std::string(name) + " witness is coverable");
    }
  });

  criterion(8, "conservation, potential, pruning and pair-extraction properties", 0, [](Result& r) {
    std::mt19937_64 rng(kSeed + 8);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };

    // conservation
    for (int it = 0; it < 200; ++it) {
      const std::size_t n = uniform(2, 7), t = uniform(1, 3);
      const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
      ColoredDistribution d(n, t);
      for (Vertex v = 0; v < n; ++v)
        for (Color c = 0; c < t; ++c) d.at(v, c) = static_cast<Count>(uniform(0, 8));
      Trace trace{d, {}};
      ColoredDistribution cur = d;
      for (int step = 0; step < 30; ++step) {
        const auto moves = legal_moves(g, cur);
        if (moves.empty()) break;
        const auto m = moves[uniform(0, moves.size() - 1)];
        apply_move_inplace(g, cur, m);
        trace.moves.push_back(m);
      }
      const auto end = replay(g, trace);
      r.expect(end.total() + trace.moves.size() == d.total(), "pebble count not conserved");
      std::uint64_t per_color_loss = 0;
      for (Color c = 0; c < t; ++c) {
        std::uint64_t moved = 0;
        for (const auto& m : trace.moves) moved += m.color == c;
        r.expect(end.color_total(c) + moved == d.color_total(c), "color count not conserved");
        per_color_loss += moved;
      }
      r.expect(per_color_loss == trace.moves.size(), "move colors out of range");
    }

    // potential, every legal move from random states, every root
    for (int it = 0; it < 300; ++it) {
      const std::size_t n = uniform(1, 7);
      const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
      std::vector<Count> counts(n);
      for (auto& c : counts) c = static_cast<Count>(uniform(0, 10));
      const auto from = ColoredDistribution::from_plain(Distribution(counts));
      for (const auto& m : legal_moves(g, from)) {
        const auto to = apply_move(g, from, m).to_plain();
        for (Vertex root = 0; root < n; ++root)
          r.expect(scaled_potential(g, to.counts(), root) <= scaled_potential(g, counts, root),
                   "potential increased");
      }
    }

    // pruned vs unpruned search
    for (int it = 0; it < 500; ++it) {
      const std::size_t n = uniform(1, 5);
      const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
      const auto parts = oracle::random_composition(rng, n, static_cast<unsigned>(uniform(0, 12)));
      const Distribution d(std::vector<Count>(parts.begin(), parts.end()));
      const bool fast = decide_coverable(g, d).coverable;
      const bool slow = decide_coverable(g, d, {}, SolverOptions{false, false, false}).coverable;
      r.expect(fast == slow, "pruned search disagrees on " + format_distribution(d));
    }

    // extract_pairs over every per-color vector with M <= 12 and t' <= 4
    for (std::size_t t = 1; t <= 4; ++t) {
      std::vector<Count> counts(t, 0);
      std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == t) {
          unsigned m = 0, present = 0;
          for (Count c : counts) {
            m += c;
            present += c > 0;
          }
          for (int e = 0; e <= static_cast<int>(m - present); ++e) {
            unsigned pairs = 0;
            for (const auto& p : extract_pairs(counts, e)) {
              r.expect(2 * p.pairs <= counts[p.color], "pair count exceeds the color");
              pairs += p.pairs;
            }
            r.expect(pairs >= static_cast<unsigned>(e / 2), "fewer than floor(E/2) pairs");
          }
          return;
        }
        for (unsigned c = 0; c <= left; ++c) {
          counts[i] = c;
          rec(i + 1, left - c);
        }
      };
      rec(0, 12);
    }
  });

  criterion(9, "hypercube: exact value at k = 2, formula and witness at k = 3", 0, [](Result& r) {
    const Graph p2 = build_path(2);
    const Graph q2 = cartesian_product(p2, p2);
    const auto rep = gamma_exact(q2);
    r.expect(rep.gamma == 9, "gamma(Q2) = " + str(rep.gamma));
    r.expect(rep.good, "Q2 not good");
    const Graph q3 = cartesian_product(std::vector<Graph>{p2, p2, p2});
    const std::uint64_t f = gamma_formula(q3);
    r.expect(f == 27, "formula for Q3 gives " + str(f));
    r.expect(goodness_bound(q3).value == 27, "sigma bound for Q3 is not 27");
    const auto witness = Distribution::simple(8, goodness_bound(q3).key_vertex, 26);
    r.expect(!decide_coverable(q3, witness).coverable, "26 pebbles on one corner of Q3 cover it");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
