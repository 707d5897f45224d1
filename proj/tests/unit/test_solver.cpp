#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"
#include "pebble/graph.hpp"
#include "pebble/solver.hpp"

using namespace pebble;

namespace {

Distribution dist(std::initializer_list<Count> c) { return Distribution(std::vector<Count>(c)); }

oracle::Adj adj_of(const Graph& g) {
  return oracle::adjacency(static_cast<int>(g.vertex_count()), g.edges());
}

std::vector<unsigned> as_unsigned(const Distribution& d) {
  return {d.counts().begin(), d.counts().end()};
}

SolverOptions plain() { return {false, false, false}; }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("small decisions") {
  const Graph p2 = build_path(2);
  auto yes = decide_coverable(p2, dist({3, 0}));
  CHECK(yes.coverable);
  REQUIRE(yes.trace);
  CHECK(yes.trace->moves.size() == 1);
  CHECK_FALSE(decide_coverable(p2, dist({2, 0})).coverable);
  CHECK(decide_coverable(build_cycle(4), dist({9, 0, 0, 0})).coverable);
  CHECK_FALSE(decide_coverable(build_cycle(4), dist({8, 0, 0, 0})).coverable);

  const auto already = decide_coverable(build_complete(4), dist({1, 2, 1, 1}));
  CHECK(already.coverable);
  CHECK(already.trace->moves.empty());

  CHECK_THROWS_AS(decide_coverable(p2, dist({1, 1, 1})), InvalidArgument);
}

TEST_CASE("witness traces replay to a cover") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
    const auto c = oracle::random_composition(rng, n, std::uniform_int_distribution<unsigned>(0, 20)(rng));
    const Distribution d(std::vector<Count>(c.begin(), c.end()));
    const auto r = decide_coverable(g, d);
    CHECK(r.coverable == r.trace.has_value());
    if (r.trace) CHECK(is_q_covered(replay(g, *r.trace), 1));
  }
}

TEST_CASE("agrees with exhaustive reachability") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const auto edges = oracle::random_connected(rng, n, 0.3);
    const Graph g = Graph::from_edges(n, edges);
    const auto c = oracle::random_composition(rng, n, std::uniform_int_distribution<unsigned>(0, 14)(rng));
    const Distribution d(std::vector<Count>(c.begin(), c.end()));
    REQUIRE(decide_coverable(g, d).coverable ==
            oracle::coverable(oracle::adjacency(static_cast<int>(n), edges), c));
  }
}

TEST_CASE("pruned and unpruned searches agree") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
    const auto c = oracle::random_composition(rng, n, std::uniform_int_distribution<unsigned>(0, 12)(rng));
    const Distribution d(std::vector<Count>(c.begin(), c.end()));
    REQUIRE(decide_coverable(g, d).coverable == decide_coverable(g, d, {}, plain()).coverable);
  }
}

TEST_CASE("adding a pebble keeps a coverable distribution coverable") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    const Graph g = Graph::from_edges(n, oracle::random_connected(rng, n, 0.3));
    const auto c = oracle::random_composition(rng, n, std::uniform_int_distribution<unsigned>(n, 14)(rng));
    Distribution d(std::vector<Count>(c.begin(), c.end()));
    if (!decide_coverable(g, d).coverable) continue;
    for (Vertex v = 0; v < n; ++v) {
      Distribution more = d;
      more[v] += 1;
      REQUIRE(decide_coverable(g, more).coverable);
    }
  }
}

TEST_CASE("budgets") {
  SolverBudget tiny;
  tiny.max_states = 2;
  CHECK_THROWS_AS(decide_coverable(build_cycle(6), Distribution::simple(6, 0, 21), tiny), ResourceLimit);
  SolverBudget few;
  few.max_pebbles = 10;
  CHECK_THROWS_AS(decide_coverable(build_path(3), dist({11, 0, 0}), few), ResourceLimit);
  CHECK_THROWS_AS(gamma_exact(build_path(5), few), ResourceLimit);
}

TEST_CASE("compositions") {
  auto all = enumerate_distributions(2, 2);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == dist({2, 0}));
  CHECK(all[1] == dist({1, 1}));
  CHECK(all[2] == dist({0, 2}));
  CHECK(enumerate_distributions(3, 1).size() == 3);
  CHECK(composition_count(4, 9) == 220);
  CHECK(composition_count(5, 13) == 2380);
  CHECK(composition_count(4, 15) == 816);
  CHECK(composition_count(6, 21) == 65780);
  for (std::size_t n = 1; n <= 5; ++n)
    for (unsigned total = 0; total <= 8; ++total) {
      const auto list = enumerate_distributions(n, total);
      CHECK(list.size() == oracle::count_compositions(static_cast<int>(n), total));
      CHECK(list.size() == composition_count(n, total));
      std::set<std::vector<Count>> unique;
      for (const auto& d : list) {
        CHECK(d.total() == total);
        unique.insert(d.counts());
      }
      CHECK(unique.size() == list.size());
    }
}

TEST_CASE("exact gamma against the exhaustive oracle") {
  const std::vector<Graph> graphs{build_path(1), build_path(2), build_path(3), build_cycle(3),
                                  build_complete(3), build_star(4), build_cycle(4)};
  for (const auto& g : graphs) {
    const auto r = gamma_exact(g);
    CHECK(r.gamma == oracle::gamma(adj_of(g)));
    CHECK(r.good);
    CHECK(r.lower_bound == goodness_bound(g).value);
    CHECK(r.witness.total() + 1 == r.gamma);
    CHECK_FALSE(oracle::coverable(adj_of(g), as_unsigned(r.witness)));
  }
}

TEST_CASE("exact gamma examples") {
  CHECK(gamma_exact(build_path(3)).gamma == 7);
  CHECK(gamma_exact(build_cycle(4)).gamma == 9);
  CHECK(gamma_exact(build_complete(3)).gamma == 5);
  CHECK(is_good(build_cycle(5)).good);
  CHECK(is_good(build_star(4)).good);
  const auto q2 = is_good(parse_graph_spec("product:path:2,path:2"));
  CHECK(q2.good);
  CHECK(q2.gamma == 9);
  REQUIRE(q2.key_vertex);
  CHECK(*q2.key_vertex == 0);
}

TEST_CASE("labeled graph enumeration") {
  CHECK(connected_labeled_graphs(1).size() == 1);
  CHECK(connected_labeled_graphs(2).size() == 1);
  CHECK(connected_labeled_graphs(3).size() == 4);
  CHECK(connected_labeled_graphs(4).size() == 38);
  CHECK(connected_labeled_graphs(5).size() == 728);
}

TEST_CASE("goodness sweeps") {
  SweepOptions o;
  o.min_vertices = 2;
  o.max_vertices = 2;
  auto r = sweep_goodness(o);
  CHECK(r.entries.size() == 1);

  o.min_vertices = o.max_vertices = 3;
  r = sweep_goodness(o);
  CHECK(r.entries.size() == 2);
  CHECK(r.counterexamples == 0);

  o.min_vertices = 1;
  o.max_vertices = 4;
  o.dedup = false;
  r = sweep_goodness(o);
  CHECK(r.entries.size() == 44);
  CHECK(r.counterexamples == 0);
  CHECK(r.unknown == 0);
  for (const auto& e : r.entries) CHECK(e.verdict == Verdict::good);

  // deterministic regardless of scheduling
  o.threads = 1;
  const auto serial = sweep_to_tsv(sweep_goodness(o));
  o.threads = 4;
  CHECK(sweep_to_tsv(sweep_goodness(o)) == serial);
  CHECK(serial.rfind("vertices\tedges\tverdict\tgamma\tlower_bound\n", 0) == 0);

  o.max_vertices = 5;
  CHECK_THROWS_AS(sweep_goodness(o), InvalidArgument);

  SolverBudget tiny;
  tiny.max_states = 1;
  o.max_vertices = 3;
  o.min_vertices = 3;
  r = sweep_goodness(o, tiny);
  CHECK(r.unknown > 0);
  CHECK(r.counterexamples == 0);
}

TEST_CASE("product equality") {
  const auto r = check_product_equality(build_path(2), build_path(2));
  CHECK(r.gamma_product == 9);
  CHECK(r.gamma_g == 3);
  CHECK(r.gamma_h == 3);
  CHECK(r.equal);
  CHECK(r.product_good);
  CHECK(r.paired_sigma == 9);
  CHECK(r.paired_sigma_matches);
  CHECK(r.paired_witness_blocked);
}

}
