#include "spanorm/greedy.hpp"

#include <algorithm>
#include <numeric>

#include "bounded_search.hpp"
#include "spanorm/error.hpp"

namespace spanorm {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Greedy: return "greedy";
    case Provenance::Oracle: return "oracle";
    case Provenance::Constructed: return "constructed";
  }
  return "unknown";
}

Spanner greedy_spanner(const Graph& g, std::size_t t) {
  require(t >= 1, "stretch must be at least 1");
  const std::size_t n = g.num_vertices();
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  // edge ids already follow (min id, max id), so a stable sort on length
  // yields the (length, min id, max id) order
  if (g.weighted())
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeId a, EdgeId b) { return g.length(a) < g.length(b); });

  std::vector<std::vector<Adjacent>> h(n);
  auto h_nbrs = [&](Vertex v) -> const std::vector<Adjacent>& {
    return h[static_cast<std::size_t>(v)];
  };
  auto g_nbrs = [&](Vertex v) { return g.neighbors(v); };
  auto len = [&](EdgeId e) { return g.length(e); };
  detail::BoundedSearch search(n);

  Spanner out;
  out.t = t;
  out.provenance = Provenance::Greedy;
  for (EdgeId e : order) {
    auto [u, v] = g.edge(e);
    bool spanned;
    if (!g.weighted()) {
      spanned = search.hops_within(h_nbrs, u, v, t);
    } else {
      double d_g = search.distance_within(g_nbrs, len, u, v, g.length(e));
      spanned = search.distance_within(h_nbrs, len, u, v, static_cast<double>(t) * d_g) != kInfinite;
    }
    if (spanned) continue;
    h[static_cast<std::size_t>(u)].push_back({v, e});
    h[static_cast<std::size_t>(v)].push_back({u, e});
    out.kept_edges.push_back(e);
  }
  std::sort(out.kept_edges.begin(), out.kept_edges.end());
  out.graph = g.edge_subgraph(out.kept_edges);
  return out;
}

StretchReport check_stretch(const Graph& g, const Graph& h, std::size_t t) {
  require(t >= 1, "stretch must be at least 1");
  require(g.num_vertices() == h.num_vertices(), "spanner must share the vertex set");
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    auto ge = g.find_edge(e.u, e.v);
    require(ge.has_value(), "spanner edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                " is not an edge of the input");
    require(g.length(*ge) == h.length(static_cast<EdgeId>(i)),
            "spanner edge length differs from the input");
  }

  detail::BoundedSearch search(g.num_vertices());
  auto h_nbrs = [&](Vertex v) { return h.neighbors(v); };
  auto g_nbrs = [&](Vertex v) { return g.neighbors(v); };
  auto h_len = [&](EdgeId e) { return h.length(e); };
  auto g_len = [&](EdgeId e) { return g.length(e); };

  StretchReport rep;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    auto [u, v] = g.edges()[i];
    ++rep.edges_checked;
    double d_g = 1, d_h = 0;
    bool ok;
    if (!g.weighted()) {
      ok = search.hops_within(h_nbrs, u, v, t);
      d_h = ok ? 0 : kInfinite;
    } else {
      d_g = search.distance_within(g_nbrs, g_len, u, v, g.length(static_cast<EdgeId>(i)));
      d_h = search.distance_within(h_nbrs, h_len, u, v, static_cast<double>(t) * d_g);
      ok = d_h != kInfinite;
    }
    if (ok) continue;
    rep.ok = false;
    ++rep.violation_count;
    if (rep.violations.size() < 16)
      rep.violations.push_back({static_cast<EdgeId>(i), u, v, d_g, d_h});
  }
  return rep;
}

bool verify_stretch(const Graph& g, const Graph& h, std::size_t t) {
  return check_stretch(g, h, t).ok;
}

bool verify_stretch(const Graph& g, const Spanner& h, std::size_t t) {
  return verify_stretch(g, h.graph, t);
}

double upper_bound_exponent(std::size_t k, const NormSpec& p) {
  require(k >= 1, "k must be at least 1");
  if (p.is_infinite()) return 1.0;
  double kd = static_cast<double>(k);
  return std::max(1.0, (kd + p.p()) / (kd * p.p()));
}

}  // namespace spanorm
