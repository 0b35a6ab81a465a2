#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spanorm/graph.hpp"
#include "spanorm/rational.hpp"

namespace spanorm {

// Cover of V by degree-growth classes. Classes may overlap.
struct VertexClasses {
  std::size_t k = 3;
  std::vector<Vertex> low;
  std::vector<Vertex> med;
  std::vector<std::vector<Vertex>> high;  // j = 0 .. floor((k-3)/2)

  // Number of classes containing each vertex.
  std::vector<std::size_t> multiplicity(std::size_t n) const;
};

// low:    d1 <= n^(1/k)
// med:    n^((k-2)/(k-1)) d1^(1/(k-1)) <= d_{k-1}
// high_j: d_{k-2j-1} <= n^(1/(k-1)) d_{k-2j-3} d1^((k-2)/(k-1))
// Thresholds are compared with an absolute guard of 1e-9 toward inclusion.
VertexClasses classify(const Graph& g, std::size_t k);

// Throws GirthPrecondition unless girth(g) >= 2k+1.
bool check_coverage(const Graph& g, std::size_t k);

struct BoundCheck {
  std::string name;
  double value = 0;
  double bound = 0;
  bool asserted = false;  // preconditions hold, so the bound must hold
  bool holds = true;
  double slack() const { return bound - value; }
};

struct ClassContributions {
  std::size_t k = 3;
  double p = 1.5;  // k/(k-1)
  double low = 0;
  double med = 0;
  std::vector<double> high;
  std::vector<BoundCheck> checks;  // low <= n, med <= n, high_j <= 8n
};

// Norms of each class at p = k/(k-1). The high-class bound is asserted only
// when the minimum degree is at least 4.
ClassContributions class_contributions(const Graph& g, std::size_t k);

struct PhiReport {
  std::size_t k = 1;
  Rational exact;
  double value = 0;
  std::optional<Vertex> zero_denominator;  // vertex with neighbours but d_k = 0
  BoundCheck bound;                         // value <= 2n
};

// sum_w sum_{v in N(w)} d_{k-1}(v) / d_k(w), in exact arithmetic.
PhiReport phi(const Graph& g, std::size_t k);

struct HeavyMassReport {
  double threshold = 0;  // 2 sqrt(n)
  std::int64_t mass = 0;
  BoundCheck bound;      // mass <= 2n, asserted when girth >= 5
};

HeavyMassReport heavy_mass(const Graph& g);

struct PeelResult {
  Graph graph;                      // vertices relabelled densely
  std::vector<Vertex> original_id;  // original id of each surviving vertex
  std::size_t removals = 0;
  std::size_t max_step_perturbation = 0;  // L1 change of the degree vector per removal
};

// Repeatedly deletes a vertex of degree <= 3 (smallest id first).
PeelResult peel_low_degree(const Graph& g);

struct LemmaCheck {
  std::string name;
  bool asserted = false;
  bool holds = true;
  double value = 0;  // aggregate left-hand side where meaningful
  double bound = 0;
  std::optional<Vertex> witness;  // first violating vertex
};

// sum_{w in N(v)} d_{k-1}(w) <= d_k(v) + d_1(v) d_{k-2}(v) for every v;
// asserted when girth >= 2k+1 and k >= 2.
LemmaCheck backtrack_check(const Graph& g, std::size_t k);

// sum_v d1^2 d_{k-2} / (d_k + d1 d_{k-2}) <= 2n; asserted when girth >= 2k+1,
// min degree >= 4, k >= 2.
LemmaCheck techratio_check(const Graph& g, std::size_t k);

// ||g||_{k/(k-1)} / (k n): the fitted constant for the degree-assuming bound.
LemmaCheck degree_bound_fit(const Graph& g, std::size_t k, double max_constant = 8.0);

// ||h||_p <= n^{1/p - (k-1)/k} ||h||_{k/(k-1)} for 1 <= p < k/(k-1).
LemmaCheck holder_step_check(const Graph& h, std::size_t k, double p);

}  // namespace spanorm
