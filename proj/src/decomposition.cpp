#include "spanorm/decomposition.hpp"

#include <cmath>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

constexpr double kGuard = 1e-9;

bool at_most(double lhs, double rhs) { return lhs <= rhs + kGuard; }

double as_double(std::int64_t x) { return static_cast<double>(x); }

void require_girth(const Graph& g, std::size_t k) {
  auto gi = girth(g);
  if (!gi.at_least(2 * k + 1))
    fail(ErrorCode::GirthPrecondition, "girth " + gi.label() + " is below 2k+1 = " +
                                           std::to_string(2 * k + 1));
}

BoundCheck make_check(std::string name, double value, double bound, bool asserted) {
  BoundCheck c{std::move(name), value, bound, asserted, true};
  c.holds = value <= bound * (1 + 1e-12) + 1e-9;
  return c;
}

}  // namespace

std::vector<std::size_t> VertexClasses::multiplicity(std::size_t n) const {
  std::vector<std::size_t> m(n, 0);
  auto add = [&](const std::vector<Vertex>& s) {
    for (Vertex v : s) ++m[static_cast<std::size_t>(v)];
  };
  add(low);
  add(med);
  for (const auto& h : high) add(h);
  return m;
}

VertexClasses classify(const Graph& g, std::size_t k) {
  require(k >= 3, "classification needs k >= 3");
  const double n = static_cast<double>(g.num_vertices());
  const double kd = static_cast<double>(k);
  auto prof = layer_profiles(g, k - 1);

  VertexClasses out;
  out.k = k;
  out.high.resize((k - 3) / 2 + 1);
  const double low_cut = std::pow(n, 1.0 / kd);
  const double med_scale = std::pow(n, (kd - 2) / (kd - 1));
  const double high_scale = std::pow(n, 1.0 / (kd - 1));
  for (const auto& lp : prof) {
    double d1 = as_double(lp.at(1));
    if (at_most(d1, low_cut)) out.low.push_back(lp.source);
    if (at_most(med_scale * std::pow(d1, 1.0 / (kd - 1)), as_double(lp.at(k - 1))))
      out.med.push_back(lp.source);
    for (std::size_t j = 0; j < out.high.size(); ++j) {
      double lhs = as_double(lp.at(k - 2 * j - 1));
      double rhs = high_scale * as_double(lp.at(k - 2 * j - 3)) * std::pow(d1, (kd - 2) / (kd - 1));
      if (at_most(lhs, rhs)) out.high[j].push_back(lp.source);
    }
  }
  return out;
}

bool check_coverage(const Graph& g, std::size_t k) {
  require(k >= 3, "coverage needs k >= 3");
  require_girth(g, k);
  auto classes = classify(g, k);
  for (auto m : classes.multiplicity(g.num_vertices()))
    if (m == 0) return false;
  return true;
}

ClassContributions class_contributions(const Graph& g, std::size_t k) {
  require(k >= 3, "contributions need k >= 3");
  require_girth(g, k);
  auto classes = classify(g, k);
  const double n = static_cast<double>(g.num_vertices());
  ClassContributions out;
  out.k = k;
  out.p = static_cast<double>(k) / static_cast<double>(k - 1);
  auto spec = NormSpec::finite(out.p);
  out.low = subset_norm(g, classes.low, spec);
  out.med = subset_norm(g, classes.med, spec);
  out.checks.push_back(make_check("low <= n", out.low, n, true));
  out.checks.push_back(make_check("med <= n", out.med, n, true));
  bool min4 = g.num_vertices() > 0 && g.min_degree() >= 4;
  for (std::size_t j = 0; j < classes.high.size(); ++j) {
    out.high.push_back(subset_norm(g, classes.high[j], spec));
    out.checks.push_back(
        make_check("high[" + std::to_string(j) + "] <= 8n", out.high.back(), 8 * n, min4));
  }
  return out;
}

PhiReport phi(const Graph& g, std::size_t k) {
  require(k >= 1, "phi needs k >= 1");
  auto prof = layer_profiles(g, k);
  PhiReport out;
  out.k = k;
  out.exact = 0;
  for (const auto& lp : prof) {
    Vertex w = lp.source;
    if (g.degree(w) == 0) continue;
    std::int64_t num = 0;
    for (const auto& a : g.neighbors(w)) num += prof[static_cast<std::size_t>(a.vertex)].at(k - 1);
    std::int64_t den = lp.at(k);
    if (den == 0) {
      if (!out.zero_denominator) out.zero_denominator = w;
      continue;
    }
    out.exact += Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  }
  out.exact.canonicalize();
  out.value = out.exact.get_d();
  const double n = static_cast<double>(g.num_vertices());
  bool asserted = !out.zero_denominator && g.num_vertices() > 0 && g.min_degree() >= 4 &&
                  girth(g).at_least(2 * k + 1);
  out.bound = make_check("phi <= 2n", out.value, 2 * n, asserted);
  if (out.zero_denominator) out.bound.holds = false;
  return out;
}

HeavyMassReport heavy_mass(const Graph& g) {
  const double n = static_cast<double>(g.num_vertices());
  HeavyMassReport out;
  out.threshold = 2 * std::sqrt(n);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    auto d = g.degree(static_cast<Vertex>(v));
    if (static_cast<double>(d) >= out.threshold) out.mass += static_cast<std::int64_t>(d);
  }
  out.bound = make_check("heavy mass <= 2n", static_cast<double>(out.mass), 2 * n,
                         girth(g).at_least(5));
  return out;
}

PeelResult peel_low_degree(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::vector<bool> alive(n, true);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(static_cast<Vertex>(v));
  PeelResult out;
  // repeated passes keep the smallest-id rule simple; cost is fine at desk scale
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v] || deg[v] > 3) continue;
      alive[v] = false;
      ++out.removals;
      out.max_step_perturbation = std::max(out.max_step_perturbation, 2 * deg[v]);
      for (const auto& a : g.neighbors(static_cast<Vertex>(v)))
        if (alive[static_cast<std::size_t>(a.vertex)]) --deg[static_cast<std::size_t>(a.vertex)];
      deg[v] = 0;
      changed = true;
      break;
    }
  }
  std::vector<Vertex> new_id(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) {
      new_id[v] = static_cast<Vertex>(out.original_id.size());
      out.original_id.push_back(static_cast<Vertex>(v));
    }
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    if (alive[static_cast<std::size_t>(e.u)] && alive[static_cast<std::size_t>(e.v)])
      es.push_back({new_id[static_cast<std::size_t>(e.u)], new_id[static_cast<std::size_t>(e.v)]});
  out.graph = Graph::from_edges(out.original_id.size(), std::move(es));
  return out;
}

LemmaCheck backtrack_check(const Graph& g, std::size_t k) {
  require(k >= 2, "backtrack lemma needs k >= 2");
  auto prof = layer_profiles(g, k);
  LemmaCheck out;
  out.name = "backtrack";
  out.asserted = girth(g).at_least(2 * k + 1);
  for (const auto& lp : prof) {
    std::int64_t lhs = 0;
    for (const auto& a : g.neighbors(lp.source)) lhs += prof[static_cast<std::size_t>(a.vertex)].at(k - 1);
    std::int64_t rhs = lp.at(k) + lp.at(1) * lp.at(k - 2);
    out.value += as_double(lhs);
    out.bound += as_double(rhs);
    if (lhs > rhs && !out.witness) {
      out.holds = false;
      out.witness = lp.source;
    }
  }
  return out;
}

LemmaCheck techratio_check(const Graph& g, std::size_t k) {
  require(k >= 2, "techratio needs k >= 2");
  auto prof = layer_profiles(g, k);
  LemmaCheck out;
  out.name = "techratio";
  const double n = static_cast<double>(g.num_vertices());
  out.bound = 2 * n;
  out.asserted = g.num_vertices() > 0 && g.min_degree() >= 4 && girth(g).at_least(2 * k + 1);
  for (const auto& lp : prof) {
    double d1 = as_double(lp.at(1));
    double dk2 = as_double(lp.at(k - 2));
    double den = as_double(lp.at(k)) + d1 * dk2;
    if (den == 0) continue;
    out.value += d1 * d1 * dk2 / den;
  }
  out.holds = out.value <= out.bound * (1 + 1e-12);
  return out;
}

LemmaCheck degree_bound_fit(const Graph& g, std::size_t k, double max_constant) {
  require(k >= 2, "degree bound needs k >= 2");
  LemmaCheck out;
  out.name = "degree_bound_fit";
  const double n = static_cast<double>(g.num_vertices());
  const double kd = static_cast<double>(k);
  out.asserted = g.num_vertices() > 0 && g.min_degree() >= 4 && girth(g).at_least(2 * k + 1);
  out.value = n == 0 ? 0 : lp_norm(g, NormSpec::finite(kd / (kd - 1))) / (kd * n);
  out.bound = max_constant;
  out.holds = out.value <= out.bound;
  return out;
}

LemmaCheck holder_step_check(const Graph& h, std::size_t k, double p) {
  require(k >= 2, "Hoelder step needs k >= 2");
  const double kd = static_cast<double>(k);
  const double q = kd / (kd - 1);
  require(p >= 1 && p < q, "Hoelder step needs 1 <= p < k/(k-1)");
  LemmaCheck out;
  out.name = "holder_step";
  out.asserted = true;
  const double n = static_cast<double>(h.num_vertices());
  out.value = lp_norm(h, NormSpec::finite(p));
  out.bound = n == 0 ? 0 : std::pow(n, 1.0 / p - 1.0 / q) * lp_norm(h, NormSpec::finite(q));
  out.holds = out.value <= out.bound * (1 + 1e-9) + 1e-9;
  return out;
}

}  // namespace spanorm
