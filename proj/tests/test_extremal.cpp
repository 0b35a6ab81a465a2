#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spanorm/error.hpp"
#include "spanorm/extremal.hpp"
#include "spanorm/families.hpp"
#include "spanorm/greedy.hpp"

using namespace spanorm;

namespace {

std::map<std::int64_t, std::uint64_t> histogram(const Graph& g) {
  std::map<std::int64_t, std::uint64_t> h;
  for (auto d : oracle::degrees(g)) ++h[d];
  return h;
}

std::size_t layer_of(const LayeredInstance& I, Vertex v) {
  std::size_t i = 0;
  while (i + 1 < I.sizes.size() && static_cast<std::uint64_t>(v) >= I.offset(i + 1)) ++i;
  return i;
}

// Structure of a materialized instance, checked edge by edge.
void check_structure(const LayeredInstance& I) {
  REQUIRE(I.spanner_materialized);
  const auto& h = I.spanner;
  CHECK(h.num_vertices() == I.num_vertices());
  std::vector<std::uint64_t> per_pair(I.t, 0);
  for (const auto& e : h.edges()) {
    const auto a = layer_of(I, e.u), b = layer_of(I, e.v);
    CHECK(b == a + 1);
    if (b == a + 1) ++per_pair[a];
  }
  if (!I.pairs.empty())
    for (std::size_t i = 0; i < I.t; ++i) CHECK(per_pair[i] == I.pairs[i].edges);
  CHECK(histogram(h) == I.spanner_degrees.counts);
  if (I.host_materialized) {
    const auto& g = I.host;
    CHECK(g.num_edges() == h.num_edges() + (I.t > 1 ? I.sizes.front() * I.sizes.back() : 0));
    for (const auto& e : h.edges()) CHECK(g.has_edge(e.u, e.v));
    for (std::uint64_t u = 0; u < I.sizes.front(); u += 3)
      for (std::uint64_t w = 0; w < I.sizes.back(); w += 5)
        CHECK(g.has_edge(static_cast<Vertex>(I.offset(0) + u), static_cast<Vertex>(I.offset(I.t) + w)));
    CHECK(histogram(g) == I.host_degrees.counts);
  }
}

// LP-point exponents from raw edge counts.
ExponentPair lp_point(const LayeredInstance& I) {
  const double ln = std::log(static_cast<double>(I.sizes.back()));
  std::vector<double> nu;
  for (auto s : I.sizes) nu.push_back(std::log(static_cast<double>(s)) / ln);
  std::vector<double> edges(I.t, 0);
  for (const auto& e : I.spanner.edges()) edges[layer_of(I, std::min(e.u, e.v))] += 1;
  ExponentPair out;
  out.ell = 0;
  for (std::size_t i = 1; i <= I.t; ++i) {
    const double left = nu[i - 1] / I.p + std::log(edges[i - 1] / static_cast<double>(I.sizes[i - 1])) / ln;
    const double right = nu[i] / I.p + std::log(edges[i - 1] / static_cast<double>(I.sizes[i])) / ln;
    out.ell = std::max({out.ell, left, right});
  }
  out.lambda = std::max(nu.front() / I.p + nu.back(), nu.back() / I.p + nu.front());
  return out;
}

std::vector<char> host_mask(const LayeredInstance& I) {
  std::vector<char> keep(I.host.num_edges(), 0);
  for (const auto& e : I.spanner.edges()) keep[static_cast<std::size_t>(*I.host.find_edge(e.u, e.v))] = 1;
  return keep;
}

}  // namespace

TEST_CASE("layer sizes") {
  const auto a = build_lcr({1, 1, 1}, 2.0, 16);
  CHECK(a.sizes == std::vector<std::uint64_t>{256, 16, 16, 256});
  CHECK(a.family == "lcr");
  const auto b = build_lcr({1, 0, 1}, 2.0, 8);
  CHECK(b.sizes == std::vector<std::uint64_t>{8, 1, 8});
  CHECK(b.spanner.num_edges() == 16);
  CHECK(b.spanner.max_degree() == 16);
  CHECK_THROWS_AS(build_lcr({1, 1, 1}, 1.0, 16), Error);
}

TEST_CASE("small instances are exact layered spanners") {
  for (auto [s, p, nL] : {std::tuple{LcrParams{1, 1, 1}, 2.0, 4.0}, std::tuple{LcrParams{1, 0, 1}, 2.0, 6.0},
                          std::tuple{LcrParams{2, 0, 2}, 1.3, 8.0}, std::tuple{LcrParams{0, 1, 2}, 10.0, 4.0},
                          std::tuple{LcrParams{1, 2, 1}, 2.5, 9.0}}) {
    const auto I = build_lcr(s, p, nL);
    check_structure(I);
    CHECK(I.stretch_mode == "full");
    CHECK(I.stretch_ok);
    if (I.host.num_vertices() <= 400)
      CHECK(oracle::all_pairs_stretch(I.host, host_mask(I), static_cast<double>(I.t)));
    const auto pt = lp_point(I);
    CHECK(pt.lambda == doctest::Approx(I.lp_point.lambda).epsilon(1e-12));
    CHECK(pt.ell == doctest::Approx(I.lp_point.ell).epsilon(1e-12));
  }
}

TEST_CASE("equal contribution and stretch on larger instances") {
  for (auto [p, t] : {std::pair{2.0, 3u}, std::pair{2.0, 5u}, std::pair{1.3, 4u}, std::pair{10.0, 3u}}) {
    const auto s = derive_lcr(p, t).params;
    const auto I = build_lcr(s, p, 32);
    for (const auto& c : I.checks) CHECK_MESSAGE(c.holds, c.name);
    CHECK(I.stretch_ok);
    if (I.spanner_materialized) check_structure(I);
    // analytic degree multiset equals the multiset of the built graph
    if (I.spanner_materialized) CHECK(DegreeHistogram::of(I.spanner).counts == I.spanner_degrees.counts);
    const auto pr = predicted_exponents(s, p);
    CHECK(std::abs(I.lp_point.lambda - pr.lambda) <= 0.1);
    CHECK(std::abs(I.lp_point.ell - pr.ell) <= 0.1);
  }
}

TEST_CASE("predicted exponents") {
  const auto a = predicted_exponents({1, 1, 1}, 2.0);
  CHECK(a.lambda == doctest::Approx(1.5));
  CHECK(a.ell == doctest::Approx(0.75));
  // C = 0: ell = 1 / (E_{1,R} - 1)
  const auto b = predicted_exponents({1, 0, 1}, 2.0);
  CHECK(b.ell == doctest::Approx(1.0));
  CHECK(b.lambda == doctest::Approx(1.5));
}

TEST_CASE("histogram helpers") {
  DegreeHistogram h;
  h.add(3, 4);
  h.add(1, 2);
  h.add(7, 0);
  CHECK(h.num_vertices() == 6);
  CHECK(h.max_degree() == 3);
  CHECK(h.norm(NormSpec::finite(1)) == doctest::Approx(14));
  CHECK(h.norm(NormSpec::finite(2)) == doctest::Approx(std::sqrt(38.0)));
  CHECK(h.norm(NormSpec::infinity()) == 3);
  const auto g = petersen_graph();
  CHECK(DegreeHistogram::of(g).counts == std::map<std::int64_t, std::uint64_t>{{3, 10}});
}

TEST_CASE("skewed instances") {
  for (double nL : {16.0, 64.0}) {
    LcrParams none{1, 1, 1, Skew::Right, 0};
    const auto z = build_skewed(none, 2.0, nL, 0);
    const auto l = build_lcr({1, 1, 1}, 2.0, nL);
    CHECK(z.sizes == l.sizes);
    CHECK(z.spanner == l.spanner);
  }
  LcrParams right{1, 1, 1, Skew::Right, 0.5};
  const auto end = build_skewed(right, 2.0, 64, 0.5);
  const auto adj = build_lcr({1, 2, 0}, 2.0, 64);
  CHECK(end.sizes == adj.sizes);
  CHECK(end.spanner_degrees.counts == adj.spanner_degrees.counts);
  CHECK(end.stretch_ok);

  const auto mid = build_skewed(right, 2.0, 64, 0.25);
  check_structure(mid);
  CHECK(mid.stretch_ok);
  const auto lo = build_lcr({1, 1, 1}, 2.0, 64);
  const double a = lo.lp_point.lambda, b = end.lp_point.lambda, m = mid.lp_point.lambda;
  CHECK(std::min(a, b) < m);
  CHECK(m < std::max(a, b));

  LcrParams left{1, 1, 1, Skew::Left, 0.5};
  const auto le = build_skewed(left, 2.0, 64, 0.5);
  CHECK(le.stretch_ok);
  check_structure(le);
  CHECK_THROWS_AS(build_skewed(right, 2.0, 64, 1.5), Error);
  CHECK_THROWS_AS(build_skewed(LcrParams{1, 0, 1, Skew::Right, 0.5}, 2.0, 64, 0.5), Error);
}

TEST_CASE("random instances from an LP point") {
  auto m = build_model<double>(3, 2.0, 1.0, LpForm::Full);
  const auto sol = solve(m);
  const double n = 4096;
  const auto I = build_from_lp(m, sol.primal, n, 7);
  for (const auto& c : I.checks) CHECK_MESSAGE(c.holds, c.name);
  CHECK(I.stretch_ok);
  CHECK(I.host_degrees.norm(NormSpec::finite(2)) >= std::pow(n, 0.9));
  const double c = I.spanner_degrees.norm(NormSpec::finite(2)) / (std::pow(n, sol.ell) * std::log(n));
  CHECK(c <= 4);
  check_structure(I);

  const auto J = build_from_lp(m, sol.primal, n, 8);
  CHECK(J.sizes == I.sizes);
  CHECK_FALSE(J.spanner == I.spanner);
  for (const auto& ch : J.checks) CHECK(ch.holds);
  CHECK(build_from_lp(m, sol.primal, n, 7).spanner == I.spanner);

  // one layer pair with unit degrees: host and spanner coincide
  auto one = build_model<double>(1, 2.0, 1.0, LpForm::Full);
  std::vector<double> x(one.lp.num_variables(), 0.0);
  for (auto i : one.nu) x[i] = 1;
  x[one.ell] = 1.5;
  const auto T = build_from_lp(one, x, 64, 1);
  CHECK(T.host == T.spanner);
  CHECK(T.stretch_ok);

  CHECK_THROWS_AS(build_from_lp(build_model<double>(3, 2.0, 1.0), sol.primal, n, 7), Error);
}

TEST_CASE("tightness case 1") {
  const auto I = build_tightness(2, 3.0, 100, 50);
  CHECK(I.case_id == 1);
  CHECK(I.graph.num_vertices() == 100);
  CHECK(I.graph.num_edges() == 99);
  CHECK(I.graph.degree(0) == 50);
  CHECK(girth(I.graph).unbounded());
  const auto h = greedy_spanner(I.graph, 3);
  CHECK(h.graph == I.graph);
  CHECK(I.norm >= 25);
  CHECK(I.norm <= 100);
}

TEST_CASE("tightness case 2") {
  const auto I = build_tightness(2, 3.0, 100, 400);
  CHECK(I.case_id == 2);
  CHECK(I.clique_size == 89);
  CHECK(I.norm >= 200);
  CHECK(I.norm <= 800);
  const auto h = greedy_spanner(I.graph, 3);
  for (auto e : I.forced_edges) CHECK(std::binary_search(h.kept_edges.begin(), h.kept_edges.end(), e));
  CHECK(I.forced_edges.size() == 101);
}

TEST_CASE("tightness case 3") {
  for (std::size_t q : {2u, 3u, 4u, 5u}) {
    const auto pg = projective_plane_incidence(q);
    const double full = lp_norm(pg, NormSpec::finite(1));
    const auto I = build_tightness(2, 1.0, pg.num_vertices(), full);
    CHECK(I.case_id == 3);
    CHECK(I.graph == pg);
    CHECK(greedy_spanner(I.graph, 3).graph == I.graph);
  }
  const auto part = build_tightness(2, 1.2, 62, 100);
  CHECK(part.case_id == 3);
  CHECK(part.norm >= 100);
  CHECK(greedy_spanner(part.graph, 3).graph == part.graph);
  const auto k3 = build_tightness(3, 1.2, 170, 200);
  CHECK(k3.case_id == 3);
  CHECK(girth(k3.graph).at_least(7));
  CHECK(greedy_spanner(k3.graph, 5).graph == k3.graph);
}

TEST_CASE("tightness case 4") {
  const auto I = build_tightness(2, 1.2, 100, 2000);
  CHECK(I.case_id == 4);
  const double m = static_cast<double>(I.clique_size);
  CHECK(m == std::floor(std::pow(2000.0, 1.2 / 2.2)));
  const auto h = greedy_spanner(I.graph, 3);
  for (auto e : I.forced_edges) CHECK(std::binary_search(h.kept_edges.begin(), h.kept_edges.end(), e));
  CHECK(I.norm >= 1000);
  CHECK(I.norm <= 4000);
  CHECK_THROWS_AS(build_tightness(2, 3.0, 100, 1.0e9), Error);
}

TEST_CASE("high-girth hosts") {
  const auto a = high_girth_host(2, 100);
  CHECK(a.graph.num_vertices() == 62);
  CHECK(girth(a.graph).length == 6u);
  const auto b = high_girth_host(3, 200);
  CHECK(b.graph.num_vertices() == 170);
  CHECK(girth(b.graph).length == 8u);
  CHECK_THROWS_AS(high_girth_host(4, 1000), Error);
  CHECK_THROWS_AS(high_girth_host(2, 10), Error);
}
