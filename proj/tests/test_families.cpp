#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "spanorm/error.hpp"
#include "spanorm/families.hpp"

using namespace spanorm;

TEST_CASE("galois field axioms") {
  for (std::size_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 25u, 27u}) {
    GaloisField f(q);
    for (std::size_t a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) {
        std::size_t inverses = 0;
        for (std::size_t b = 1; b < q; ++b) inverses += f.mul(a, b) == 1;
        CHECK(inverses == 1);
      }
      for (std::size_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        if (q <= 9)
          for (std::size_t c = 0; c < q; ++c) {
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          }
      }
    }
  }
  CHECK_THROWS_AS(GaloisField(6), Error);
  CHECK_THROWS_AS(GaloisField(16), Error);
}

TEST_CASE("prime powers") {
  std::set<std::size_t> expect = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};
  for (std::size_t q = 0; q <= 32; ++q) CHECK(is_prime_power(q) == (expect.count(q) == 1));
}

TEST_CASE("projective planes") {
  for (std::size_t q : {2u, 3u, 4u, 5u, 7u}) {
    const auto g = projective_plane_incidence(q);
    CHECK(g.num_vertices() == 2 * (q * q + q + 1));
    CHECK(g.min_degree() == q + 1);
    CHECK(g.max_degree() == q + 1);
    if (q <= 4) CHECK(oracle::girth(g) == 6);
    CHECK(girth(g).length == 6u);
  }
}

TEST_CASE("generalized quadrangles") {
  for (std::size_t q : {2u, 3u}) {
    const auto g = gq_incidence(q);
    CHECK(g.num_vertices() == 2 * (q + 1) * (q * q + 1));
    CHECK(g.min_degree() == q + 1);
    CHECK(g.max_degree() == q + 1);
    CHECK(girth(g).length == 8u);
  }
  CHECK(oracle::girth(gq_incidence(2)) == 8);
}

TEST_CASE("named graphs") {
  for (const auto& info : named_graphs()) {
    const auto g = named_girth_graph(info.name);
    CHECK(g.num_vertices() == info.n);
    CHECK(g.min_degree() == info.degree);
    CHECK(g.max_degree() == info.degree);
    if (info.n <= 30) CHECK(oracle::girth(g) == info.girth);
  }
  CHECK(named_girth_graph("petersen") == petersen_graph());
  CHECK(named_girth_graph("pg2_3").num_vertices() == 26);
  CHECK(named_girth_graph("tutte_coxeter").num_vertices() == 30);
  CHECK_THROWS_AS(named_girth_graph("nonesuch"), Error);
}

TEST_CASE("small families") {
  CHECK(complete_graph(5).num_edges() == 10);
  CHECK(complete_bipartite(2, 3).num_edges() == 6);
  CHECK(girth(complete_bipartite(2, 3)).length == 4u);
  CHECK(cycle_graph(6).num_edges() == 6);
  CHECK(path_graph(4).num_edges() == 3);
  CHECK(star_graph(4).degree(0) == 4);
  const auto lcf = lcf_graph(8, {4}, 8);
  CHECK(lcf.num_edges() == 12);
  CHECK(lcf.min_degree() == 3);
}

TEST_CASE("cyclic lifts") {
  const auto base = petersen_graph();
  const auto lift = cyclic_lift(base, 5, 3);
  CHECK(lift.num_vertices() == 50);
  CHECK(lift.num_edges() == 75);
  CHECK(lift.min_degree() == 3);
  CHECK(lift.max_degree() == 3);
  CHECK(cyclic_lift(base, 5, 3) == lift);

  const auto r = high_girth_lift(named_girth_graph("heawood"), 8, 8, 1);
  CHECK(r.girth >= 8);
  CHECK(girth(r.graph).at_least(8));
  CHECK(r.graph.num_vertices() == 14 * r.N);
  CHECK(r.graph.min_degree() == 3);
  CHECK(r.graph.max_degree() == 3);
}

TEST_CASE("random graphs") {
  const auto g = random_graph(30, 100, 9);
  CHECK(g.num_edges() == 100);
  CHECK(random_graph(30, 100, 9) == g);
  CHECK_FALSE(random_graph(30, 100, 10) == g);
  CHECK(random_graph(5, 10, 1).num_edges() == 10);
  CHECK_THROWS_AS(random_graph(5, 11, 1), Error);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_connected_graph(12, 11 + seed % 10, seed);
    CHECK(c.num_edges() == 11 + seed % 10);
    const auto d = shortest_paths(c, 0);
    for (double x : d) CHECK(x != kInfinite);
  }
}
