#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spanorm/graph.hpp"

namespace spanorm {

enum class Provenance { Greedy, Oracle, Constructed };
const char* to_string(Provenance p);

// A subgraph H of an input graph G on the same vertex set. kept_edges are
// edge ids of G, in increasing order.
struct Spanner {
  Graph graph;
  std::vector<EdgeId> kept_edges;
  std::size_t t = 1;
  Provenance provenance = Provenance::Constructed;
};

// Edges processed by (length, min id, max id); an edge is kept when the
// current spanner has no u-v path of length <= t * d_G(u, v).
Spanner greedy_spanner(const Graph& g, std::size_t t);

struct StretchViolation {
  EdgeId edge;
  Vertex u, v;
  double d_g;
  double d_h;  // kInfinite when no path within the checked bound
};

struct StretchReport {
  bool ok = true;
  std::size_t edges_checked = 0;
  std::size_t violation_count = 0;
  std::vector<StretchViolation> violations;  // first few, in edge order
};

// Checks d_H(u,v) <= t * d_G(u,v) for every edge {u,v} of g. Edges suffice:
// a shortest u-v path in g is a sequence of edges, each stretched by at most
// t in h, so concatenating the h-paths gives d_H(u,v) <= t * d_G(u,v).
// h must be a subgraph of g (same vertex count, edges and lengths of g).
StretchReport check_stretch(const Graph& g, const Graph& h, std::size_t t);
bool verify_stretch(const Graph& g, const Graph& h, std::size_t t);
bool verify_stretch(const Graph& g, const Spanner& h, std::size_t t);

// Growth exponent of the greedy (2k-1)-spanner's norm: max(1, (k+p)/(kp)).
double upper_bound_exponent(std::size_t k, const NormSpec& p);

}  // namespace spanorm
