#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spanorm/families.hpp"
#include "spanorm/greedy.hpp"

using namespace spanorm;

namespace {

std::vector<char> mask_of(const Graph& g, const std::vector<EdgeId>& kept) {
  std::vector<char> m(g.num_edges(), 0);
  for (auto e : kept) m[static_cast<std::size_t>(e)] = 1;
  return m;
}

Graph with_lengths(const Graph& g, std::uint64_t salt) {
  std::vector<double> len(g.num_edges());
  for (std::size_t e = 0; e < len.size(); ++e) len[e] = 1.0 + static_cast<double>((e * 11 + salt) % 4) * 0.75;
  return Graph::from_edges(g.num_vertices(), g.edges(), len);
}

}  // namespace

TEST_CASE("greedy examples") {
  const auto tree = path_graph(7);
  auto h = greedy_spanner(tree, 3);
  CHECK(h.graph == tree);
  CHECK(h.provenance == Provenance::Greedy);

  const auto c5 = cycle_graph(5);
  CHECK(greedy_spanner(c5, 3).graph == c5);

  const auto k4 = complete_graph(4);
  const auto star = greedy_spanner(k4, 3);
  CHECK(star.graph == Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK(star.kept_edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(verify_stretch(k4, star, 3));
  CHECK(oracle::all_pairs_stretch(k4, mask_of(k4, star.kept_edges), 3));

  CHECK(greedy_spanner(Graph::from_edges(0, {}), 3).graph.num_edges() == 0);
}

TEST_CASE("verify_stretch examples") {
  const auto c5 = cycle_graph(5);
  CHECK(verify_stretch(c5, c5, 3));
  CHECK(verify_stretch(c5, c5, 1));
  const EdgeId keep[] = {0, 1, 2, 3};
  const auto r = check_stretch(c5, c5.edge_subgraph(keep), 3);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violation_count == 1);
  CHECK(r.violations[0].edge == 4);
  CHECK(verify_stretch(c5, c5.edge_subgraph(keep), 4));
}

TEST_CASE("upper bound exponent") {
  CHECK(upper_bound_exponent(2, NormSpec::finite(1)) == doctest::Approx(1.5));
  CHECK(upper_bound_exponent(2, NormSpec::finite(2)) == doctest::Approx(1.0));
  CHECK(upper_bound_exponent(2, NormSpec::finite(1.5)) == doctest::Approx(7.0 / 6.0));
  CHECK(upper_bound_exponent(3, NormSpec::finite(3)) == doctest::Approx(1.0));
  CHECK(upper_bound_exponent(2, NormSpec::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("greedy matches the brute-force greedy") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 6 + seed % 10;
    const std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, n + seed % 15);
    auto g = random_graph(n, m, seed);
    if (seed % 2) g = with_lengths(g, seed);
    for (std::size_t t : {1u, 2u, 3u, 5u}) {
      const auto h = greedy_spanner(g, t);
      CHECK(h.kept_edges == oracle::greedy(g, t));
      CHECK(oracle::all_pairs_stretch(g, mask_of(g, h.kept_edges), static_cast<double>(t)));
    }
  }
}

TEST_CASE("greedy invariants on unit graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 20 + seed * 3;
    const auto g = random_graph(n, std::min<std::size_t>(n * (n - 1) / 2, n * 3), seed);
    for (std::size_t t : {3u, 5u, 7u}) {
      const auto h = greedy_spanner(g, t);
      CHECK(girth(h.graph).at_least(t + 2));
      CHECK(verify_stretch(g, h, t));
      CHECK(greedy_spanner(h.graph, t).graph == h.graph);
      const auto dg = oracle::all_pairs(g, {}, true);
      const auto dh = oracle::all_pairs(h.graph, {}, true);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) CHECK((dg[u][v] == oracle::kInf) == (dh[u][v] == oracle::kInf));
    }
  }
}

TEST_CASE("check_stretch on edges agrees with all pairs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = with_lengths(random_graph(9, 16, seed), seed);
    std::vector<EdgeId> keep;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if ((seed >> (e % 6)) & 1 || e % 3 == 0) keep.push_back(static_cast<EdgeId>(e));
    const auto h = g.edge_subgraph(keep);
    for (std::size_t t : {1u, 2u, 3u}) {
      CHECK(verify_stretch(g, h, t) == oracle::all_pairs_stretch(g, mask_of(g, keep), static_cast<double>(t)));
    }
  }
}

TEST_CASE("greedy on named graphs keeps high-girth hosts") {
  for (const auto& info : named_graphs()) {
    const auto g = named_girth_graph(info.name);
    for (std::size_t t = 1; t + 2 <= info.girth; ++t) CHECK(greedy_spanner(g, t).graph == g);
  }
}

TEST_CASE("desk upper bound on small graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 100 + 40 * seed;
    const auto g = random_graph(n, static_cast<std::size_t>(std::pow(n, 1.5)), seed);
    const auto h = greedy_spanner(g, 3);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double nn = static_cast<double>(n);
      const double bound = 8 * std::max(nn, std::pow(nn, (2 + p) / (2 * p)));
      CHECK(lp_norm(h.graph, NormSpec::finite(p)) <= bound);
    }
    CHECK(lp_norm(h.graph, NormSpec::infinity()) <= 8.0 * static_cast<double>(n));
  }
}
