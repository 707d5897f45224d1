#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "pebble/errors.hpp"
#include "pebble/formulas.hpp"
#include "pebble/graph.hpp"

using namespace pebble;

TEST_SUITE("formulas") {

TEST_CASE("paths") {
  std::uint64_t expect = 1;
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(gamma_path(n) == expect);
    expect = 2 * expect + 1;
  }
  CHECK(gamma_path(63) == (std::uint64_t{1} << 63) - 1);
  CHECK_THROWS_AS(gamma_path(64), Overflow);
  CHECK_THROWS_AS(gamma_path(0), InvalidArgument);
}

TEST_CASE("cycles") {
  const std::vector<std::uint64_t> expect{5, 9, 13, 21, 29, 45};
  for (std::size_t n = 3; n <= 8; ++n) CHECK(gamma_cycle(n) == expect[n - 3]);
  // even n = 2r gives 3 * 2^r - 3, odd n = 2r - 1 gives 2^(r+1) - 3
  for (std::size_t r = 2; r <= 20; ++r) {
    CHECK(gamma_cycle(2 * r) == 3 * (std::uint64_t{1} << r) - 3);
    CHECK(gamma_cycle(2 * r - 1) == (std::uint64_t{1} << (r + 1)) - 3);
  }
}

TEST_CASE("complete graphs") {
  for (std::size_t n = 1; n <= 10; ++n) CHECK(gamma_complete(n) == 2 * n - 1);
}

TEST_CASE("closed forms match the goodness bound") {
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(goodness_bound(build_path(n)).value == gamma_path(n));
    CHECK(goodness_bound(build_complete(n)).value == gamma_complete(n));
  }
  for (std::size_t n = 3; n <= 12; ++n)
    CHECK(goodness_bound(build_cycle(n)).value == gamma_cycle(n));
  for (std::size_t n = 2; n <= 10; ++n) CHECK(gamma_tree(build_star(n)) == 4 * n - 5);
}

TEST_CASE("sigma against an independent oracle") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto edges = oracle::random_connected(rng, n, 0.2);
    const Graph g = Graph::from_edges(n, edges);
    CHECK(goodness_bound(g).value == oracle::max_sigma(oracle::adjacency(static_cast<int>(n), edges)));
  }
}

TEST_CASE("sigma is multiplicative on products") {
  const std::vector<Graph> gs{build_path(3), build_cycle(5), build_complete(3), build_star(4)};
  for (const auto& g : gs)
    for (const auto& h : gs) {
      const Graph p = cartesian_product(g, h);
      for (Vertex i = 0; i < g.vertex_count(); ++i)
        for (Vertex j = 0; j < h.vertex_count(); ++j)
          CHECK(sigma(p, i * h.vertex_count() + j) == sigma(g, i) * sigma(h, j));
      CHECK(goodness_bound(p).value == goodness_bound(g).value * goodness_bound(h).value);
    }
}

TEST_CASE("key vertex ties go to the smallest index") {
  CHECK(goodness_bound(build_cycle(5)).key_vertex == 0);
  CHECK(goodness_bound(build_path(4)).key_vertex == 0);
  CHECK(goodness_bound(build_star(5)).key_vertex == 1);
}

TEST_CASE("dispatch") {
  CHECK(gamma_formula(parse_graph_spec("cycle:6")) == 21);
  CHECK(gamma_formula(parse_graph_spec("product:path:2,path:2,path:2")) == 27);
  CHECK(gamma_formula(parse_graph_spec("product:path:2,path:3")) == 21);
  CHECK(gamma_formula(parse_graph_spec("product:complete:3,path:2")) == 15);
  CHECK(gamma_formula(parse_graph_spec("product:star:4,cycle:5")) == 11 * 13);
  CHECK(gamma_formula(parse_graph_spec(std::string("tree:") + TEST_DATA_DIR + "/spider.edges")) ==
        1 + 2 + 4 + 8 + 8 + 16 + 16);
  // two factors outside the path and cycle families have no proven value
  CHECK_THROWS_AS(gamma_formula(parse_graph_spec("product:complete:3,star:4")), InvalidArgument);
  CHECK_THROWS_AS(gamma_formula(parse_graph_spec(std::string("edges:") + TEST_DATA_DIR + "/spider.edges")),
                  InvalidArgument);
  CHECK_FALSE(has_gamma_formula(parse_graph_spec("product:complete:3,complete:3")));
  CHECK(has_gamma_formula(parse_graph_spec("path:3")));
  CHECK_THROWS_AS(gamma_formula(parse_graph_spec("product:path:40,path:40")), Overflow);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_mul(1u << 31, 2) == std::uint64_t{1} << 32);
  CHECK_THROWS_AS(checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 30), Overflow);
  CHECK_THROWS_AS(checked_add(~std::uint64_t{0}, 1), Overflow);
  CHECK(pow2(0) == 1);
  CHECK_THROWS_AS(pow2(64), Overflow);
}

}
