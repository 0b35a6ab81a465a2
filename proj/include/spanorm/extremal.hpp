#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spanorm/graph.hpp"
#include "spanorm/lb_lp.hpp"
#include "spanorm/lcr.hpp"

namespace spanorm {

// Degree multiset, used when a graph is too large to materialize.
struct DegreeHistogram {
  std::map<std::int64_t, std::uint64_t> counts;  // degree -> number of vertices

  void add(std::int64_t degree, std::uint64_t count) {
    if (count) counts[degree] += count;
  }
  std::uint64_t num_vertices() const;
  std::int64_t max_degree() const;
  long double power_sum(double p) const;
  double norm(const NormSpec& p) const;
  static DegreeHistogram of(const Graph& g);
};

// How one consecutive layer pair (i, i+1) is wired.
//  Digit:  central digit graph; vertex x is joined to every y that agrees with
//          x except in one mixed-radix digit of (x mod period).
//  Grow:   |V_i| <= |V_i+1|; vertex y of V_i+1 is joined to y mod |V_i|.
//  Shrink: |V_i| > |V_i+1|; vertex x of V_i is joined to x mod |V_i+1|.
//  Block:  skew boundary; centre vertex x lies in block x mod period and each
//          block is a complete bipartite K(skew, fan) to `fan` outer vertices.
enum class PairKind { Digit, Grow, Shrink, Block };
const char* to_string(PairKind k);

struct LayerPair {
  PairKind kind = PairKind::Grow;
  std::uint64_t radix = 0;         // Digit
  std::uint64_t digit_weight = 1;  // Digit: product of the lower radices
  std::uint64_t period = 1;        // Digit, Block
  std::uint64_t skew = 1;          // Block: degree of each outer vertex
  std::uint64_t fan = 1;           // Block: degree of each centre vertex
  bool centre_on_left = true;      // Block
  std::uint64_t edges = 0;
  // Degree added to vertex j of the left layer: left_base + (j < left_extra);
  // likewise for the right layer.
  std::int64_t left_base = 0, right_base = 0;
  std::uint64_t left_extra = 0, right_extra = 0;
};

struct ExponentPair {
  double lambda = 0;
  double ell = 0;
};

struct InstanceCheck {
  std::string name;
  bool holds = true;
  double value = 0;
  double bound = 0;
};

struct LayeredInstance {
  std::size_t t = 0;
  double p = 2;
  LcrParams params;
  std::string family;  // "lcr", "skewed", "lp"
  std::vector<std::uint64_t> sizes;
  std::vector<double> real_sizes;
  std::vector<LayerPair> pairs;  // empty for random instances
  std::vector<std::uint64_t> digits;
  std::uint64_t skew_degree = 1;

  bool spanner_materialized = false;
  bool host_materialized = false;
  Graph spanner;  // vertex (i, j) has id offset(i) + j
  Graph host;
  DegreeHistogram spanner_degrees;
  DegreeHistogram host_degrees;

  // LP-point exponents: nu_i = log_n |V_i| with n = |V_t|, degrees taken as
  // edge count over layer size per pair;
  //   ell    = max_i max(nu_{i-1}/p + log_n(|E_i|/|V_{i-1}|), nu_i/p + log_n(|E_i|/|V_i|))
  //   lambda = max(nu_0/p + nu_t, nu_t/p + nu_0).
  ExponentPair lp_point;
  // log_N of the host and spanner norms, N = total vertex count.
  ExponentPair norm_based;

  std::string stretch_mode;  // "full", "sampled" or "not_checked"
  std::size_t stretch_checked = 0;
  bool stretch_ok = true;
  std::vector<InstanceCheck> checks;

  std::uint64_t num_vertices() const;
  std::uint64_t offset(std::size_t layer) const;
};

struct BuildOptions {
  std::uint64_t max_materialize = 20'000'000;  // vertices + spanner edges
  std::uint64_t max_biclique = 10'000'000;
  std::size_t stretch_samples = 10'000;
  std::uint64_t seed = 0;
  bool verify = true;
};

// Exponents of an (L,C,R)-minimal spanner scaled so that n_t = n:
//   C > 0: lambda = (E_{C,L}/p + E_{C,R}) / E_{C,R},  ell = (1/p + 1/C) / E_{C,R}
//   C = 0: lambda = ((E_{1,L}-1)/p + E_{1,R}-1) / (E_{1,R}-1),  ell = 1/(E_{1,R}-1)
ExponentPair predicted_exponents(const LcrParams& params, double p);

// Central layers hold the mixed-radix digit space (radices with product close
// to n_L); outer layers follow n_{i} = n_{i-1} (n_L c^p / n_{i-1})^{1/p} with
// c = n_L^{1/C}, floored to at least 1. For C = 0, n_L is the degree of the
// single central vertex.
LayeredInstance build_lcr(const LcrParams& params, double p, double n_L,
                          const BuildOptions& opts = {});

// Skew degree d~ = n_L^skew_exponent, central degree (n_L/d~)^{1/C}.
// skew_exponent = 0 gives build_lcr; 1/(C+1) gives the (L, C+1, R-1) shape
// for a right skew and (L-1, C+1, R) for a left skew.
LayeredInstance build_skewed(const LcrParams& params, double p, double n_L, double skew_exponent,
                             const BuildOptions& opts = {});

// Random layered graph from a full-LP point: |V_i| = n^{nu_i}, each vertex of
// V_{i-1} picks min(ceil(n^{delta_i} ln n), |V_i|) random neighbours in V_i.
// Host adds (u, w), u in V_0, w in V_t, whenever a t-hop path joins them.
LayeredInstance build_from_lp(const LbLpModel<double>& model, const std::vector<double>& primal,
                              double n, std::uint64_t seed, const BuildOptions& opts = {});

struct TightnessInstance {
  Graph graph;
  int case_id = 0;  // 1..4
  std::size_t k = 2;
  double p = 1;
  std::size_t n = 0;
  double Lambda = 0;
  std::size_t clique_size = 0;
  std::string host_name;
  std::vector<EdgeId> forced_edges;  // edges every (2k-1)-spanner keeps
  double norm = 0;                   // ||graph||_p
};

// Case 1: p >= k/(k-1), Lambda <= n: star with Lambda leaves plus a path.
// Case 2: p >= k/(k-1), Lambda > n: clique on Lambda^{p/(1+p)} vertices, an
//         n-leaf star, and one joining edge.
// Case 3: p < k/(k-1), Lambda <= n^{(k+p)/(kp)}: subgraph of a girth >= 2k+1
//         host with norm about Lambda.
// Case 4: p < k/(k-1), larger Lambda: clique on Lambda^{p/(1+p)} vertices
//         joined by one edge to a high-girth host on about n/2 vertices.
TightnessInstance build_tightness(std::size_t k, double p, std::size_t n, double Lambda);

struct HighGirthHost {
  Graph graph;
  std::string name;
};

// Largest available girth >= 2k+1 host with at most max_vertices vertices
// (PG(2,q) incidence for k = 2, W(q) incidence for k = 3).
HighGirthHost high_girth_host(std::size_t k, std::size_t max_vertices);

}  // namespace spanorm
