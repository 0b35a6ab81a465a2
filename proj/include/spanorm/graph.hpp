#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spanorm {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Adjacent {
  Vertex vertex;
  EdgeId edge;
};

// Undirected simple graph on vertices 0..n-1, immutable once built.
// Edges are stored canonically (u < v) in lexicographic order, so edge ids
// do not depend on input order. A graph without lengths is unit-length.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                          std::vector<double> lengths = {});

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool weighted() const { return !lengths_.empty(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  double length(EdgeId e) const {
    return lengths_.empty() ? 1.0 : lengths_[static_cast<std::size_t>(e)];
  }
  const std::vector<double>& lengths() const { return lengths_; }

  std::span<const Adjacent> neighbors(Vertex v) const {
    auto b = offsets_[static_cast<std::size_t>(v)];
    auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {adjacency_.data() + b, e - b};
  }
  std::size_t degree(Vertex v) const {
    return offsets_[static_cast<std::size_t>(v) + 1] -
           offsets_[static_cast<std::size_t>(v)];
  }
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  // Same vertex set, keeping only the listed edges (and their lengths).
  Graph edge_subgraph(std::span<const EdgeId> keep) const;

  std::size_t min_degree() const;
  std::size_t max_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.lengths_ == b.lengths_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> lengths_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Adjacent> adjacency_;  // sorted by neighbour id per vertex
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0) : n_(n) {}
  Vertex add_vertex() { return static_cast<Vertex>(n_++); }
  void add_edge(Vertex u, Vertex v, double length = 1.0);
  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  Graph build() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<double> lengths_;
  bool weighted_ = false;
};

// A norm index p in [1, inf].
class NormSpec {
 public:
  static NormSpec finite(double p);
  static NormSpec infinity() { return NormSpec(); }
  static NormSpec parse(const std::string& text);

  bool is_infinite() const { return !p_.has_value(); }
  double p() const;
  std::string label() const;

 private:
  NormSpec() = default;
  explicit NormSpec(double p) : p_(p) {}
  std::optional<double> p_;
};

using DegreeVector = std::vector<std::int64_t>;

DegreeVector degree_vector(const Graph& g);
double norm_of(std::span<const std::int64_t> values, const NormSpec& p);
// sum of d^p; monotone in the norm for finite p, used for exact ranking.
long double power_sum(std::span<const std::int64_t> values, double p);

double lp_norm(const Graph& g, const NormSpec& p);
// Norm of the degree vector restricted to `subset`, degrees taken in g.
double subset_norm(const Graph& g, std::span<const Vertex> subset, const NormSpec& p);

// counts[i] = number of vertices at hop distance exactly i from source,
// for i = 0..r. Edge lengths are ignored.
struct LayerProfile {
  Vertex source = 0;
  std::vector<std::int64_t> counts;
  std::int64_t at(std::size_t i) const { return i < counts.size() ? counts[i] : 0; }
};

LayerProfile layer_profile(const Graph& g, Vertex v, std::size_t r);
// Profiles of every vertex up to radius r, as rows of an n x (r+1) table.
std::vector<LayerProfile> layer_profiles(const Graph& g, std::size_t r);

// Hop girth; empty when the graph is a forest.
struct Girth {
  std::optional<std::size_t> length;
  bool unbounded() const { return !length.has_value(); }
  bool at_least(std::size_t k) const { return !length || *length >= k; }
  std::string label() const;
};

Girth girth(const Graph& g);

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

// Single-source distances; hop counts for unit graphs, Dijkstra otherwise.
// Unreachable vertices get kInfinite.
std::vector<double> shortest_paths(const Graph& g, Vertex source);

// Relative tolerance used when comparing weighted path lengths.
inline constexpr double kLengthTolerance = 1e-12;
inline bool length_within(double d, double bound) {
  return d <= bound * (1.0 + kLengthTolerance);
}

}  // namespace spanorm
