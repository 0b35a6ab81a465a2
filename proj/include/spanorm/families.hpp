#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spanorm/graph.hpp"

namespace spanorm {

// GF(q) for q = r^e, r prime, e <= 3. Elements are 0..q-1 (base-r digits of
// the polynomial coefficients).
class GaloisField {
 public:
  explicit GaloisField(std::size_t q);
  std::size_t order() const { return q_; }
  std::size_t add(std::size_t a, std::size_t b) const { return add_[a * q_ + b]; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * q_ + b]; }
  std::size_t neg(std::size_t a) const { return neg_[a]; }
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

 private:
  std::size_t q_;
  std::vector<std::size_t> add_, mul_, neg_;
};

bool is_prime_power(std::size_t q);

// Point-line incidence graph of PG(2,q): 2(q^2+q+1) vertices, (q+1)-regular,
// girth 6. Points first, then lines.
Graph projective_plane_incidence(std::size_t q);

// Point-line incidence graph of the symplectic quadrangle W(q):
// 2(q+1)(q^2+1) vertices, (q+1)-regular, girth 8.
Graph gq_incidence(std::size_t q);

// Hamiltonian cycle 0..n-1 plus chords i -- i + shifts[i mod |shifts|].
Graph lcf_graph(std::size_t n, const std::vector<int>& shifts, std::size_t repeats);

Graph petersen_graph();
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

struct NamedGraphInfo {
  std::string name;
  std::size_t n;
  std::size_t degree;
  std::size_t girth;
};

const std::vector<NamedGraphInfo>& named_graphs();

// Builds the graph and checks its (n, degree, girth); throws UnknownName or
// Construction.
Graph named_girth_graph(const std::string& name);

// Z_N voltage lift of `base` with random voltages: vertex (v, i) is v*N + i,
// edge {u,v} with voltage a becomes {(u,i), (v,i+a)}.
Graph cyclic_lift(const Graph& base, std::size_t N, std::uint64_t seed);

struct LiftResult {
  Graph graph;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::size_t girth = 0;
};

// Z_N lift with girth >= min_girth: voltages are drawn edge by edge, each
// redrawn while it would close a shorter cycle. An attempt that gets stuck
// moves to the next seed; N doubles every 4 attempts. Throws Construction
// after max_attempts.
LiftResult high_girth_lift(const Graph& base, std::size_t min_girth, std::size_t N,
                           std::uint64_t seed, std::size_t max_attempts = 64);

// G(n, m): m distinct edges chosen uniformly.
Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

// Random spanning tree plus extra random edges up to m in total (m >= n-1).
Graph random_connected_graph(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace spanorm
