#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spanorm/graph.hpp"
#include "spanorm/greedy.hpp"

namespace spanorm {

struct OracleOptions {
  bool prune = true;
  std::size_t max_exhaustive_edges = 24;
  std::size_t max_pruned_edges = 40;
};

struct OracleResult {
  Spanner optimum;
  double optimum_norm = 0;
  std::uint64_t explored = 0;  // subsets (exhaustive) or search nodes (pruned)
  std::uint64_t pruned = 0;
  bool exhaustive = false;
};

// Minimum-norm t-spanner by exhaustive search or branch-and-bound; among
// optima the lexicographically smallest kept-edge set wins.
OracleResult optimal_spanner(const Graph& g, std::size_t t, const NormSpec& p,
                             const OracleOptions& opts = {});

// ||greedy||_p / optimum; 1 for edgeless graphs.
double greedy_ratio(const Graph& g, std::size_t t, const NormSpec& p,
                    const OracleOptions& opts = {});
double greedy_ratio(const Graph& g, const OracleResult& opt, const NormSpec& p);

struct BallGrowthRow {
  std::size_t r = 0;
  std::int64_t max_ball = 0;
  Vertex argmax = 0;
  double bound = 0;  // n^{(2 - 2^{1-r}) alpha}
  bool holds = true;
};

struct BallGrowthReport {
  std::size_t n = 0;
  double alpha = 0;
  std::int64_t square_sum = 0;  // sum of d(v)^2
  std::vector<BallGrowthRow> rows;
  // |B(v,r+1)|^2 <= |B(v,r)| * sum d^2 for r >= 1, every v
  std::uint64_t inductive_checked = 0;
  std::uint64_t inductive_violations = 0;
  bool lemma_holds() const;
};

// Report only. p2_norm must match the 2-norm of h.
BallGrowthReport ball_growth_check(const Graph& h, double p2_norm, std::size_t r_max);

struct TwoPathCount {
  std::int64_t middle = 0;           // sum of d(v)^2
  std::int64_t walks = 0;            // ordered 2-walks v-w-u, backtracks included
  std::int64_t distinct_pairs = 0;   // ordered (v,u), u != v, joined by a 2-path
  bool girth_at_least_5 = false;
  // walks == middle always; with girth >= 5 also distinct_pairs == sum d(d-1)
  bool consistent = true;
};

TwoPathCount two_path_count(const Graph& h);

}  // namespace spanorm
