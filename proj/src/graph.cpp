#include "spanorm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "spanorm/error.hpp"

namespace spanorm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::GirthPrecondition: return "girth_precondition";
    case ErrorCode::NiceRangeExceeded: return "nice_range_exceeded";
    case ErrorCode::NegativeComponent: return "negative_component";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Unbounded: return "unbounded";
    case ErrorCode::SizeLimit: return "size_limit";
    case ErrorCode::Construction: return "construction_failed";
    case ErrorCode::UnknownName: return "unknown_name";
    case ErrorCode::RejectedSpec: return "rejected_spec";
  }
  return "unknown";
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, std::vector<double> lengths) {
  if (!lengths.empty() && lengths.size() != edges.size())
    fail(ErrorCode::InvalidArgument, "length count does not match edge count");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
        static_cast<std::size_t>(e.v) >= n)
      fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) fail(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(edges[a].u, edges[a].v) < std::pair(edges[b].u, edges[b].v);
  });

  bool unit = std::all_of(lengths.begin(), lengths.end(), [](double w) { return w == 1.0; });
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (std::size_t i : order) {
    if (!g.edges_.empty() && g.edges_.back() == edges[i])
      fail(ErrorCode::InvalidArgument, "parallel edge " + std::to_string(edges[i].u) + "-" +
                                           std::to_string(edges[i].v));
    g.edges_.push_back(edges[i]);
    if (!unit) {
      double w = lengths[i];
      if (!(w > 0.0) || !std::isfinite(w))
        fail(ErrorCode::InvalidArgument, "edge lengths must be positive and finite");
      g.lengths_.push_back(w);
    }
  }

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    g.adjacency_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, static_cast<EdgeId>(id)};
    g.adjacency_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, static_cast<EdgeId>(id)};
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Adjacent& a, const Adjacent& b) { return a.vertex < b.vertex; });
  return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_)
    return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Adjacent& a, Vertex x) { return a.vertex < x; });
  if (it != nb.end() && it->vertex == v) return it->edge;
  return std::nullopt;
}

Graph Graph::edge_subgraph(std::span<const EdgeId> keep) const {
  std::vector<Edge> es;
  std::vector<double> ls;
  es.reserve(keep.size());
  for (EdgeId e : keep) {
    es.push_back(edge(e));
    if (weighted()) ls.push_back(length(e));
  }
  return from_edges(n_, std::move(es), std::move(ls));
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < n_; ++v) best = std::min(best, degree(static_cast<Vertex>(v)));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

void GraphBuilder::add_edge(Vertex u, Vertex v, double length) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_)
    fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
  edges_.push_back({u, v});
  lengths_.push_back(length);
  if (length != 1.0) weighted_ = true;
}

Graph GraphBuilder::build() const {
  return Graph::from_edges(n_, edges_, weighted_ ? lengths_ : std::vector<double>{});
}

NormSpec NormSpec::finite(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "norm index must be at least 1");
  return NormSpec(p);
}

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "INFINITY" || text == "Inf") return infinity();
  double p = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::Parse, "cannot parse norm index '" + text + "'");
  return finite(p);
}

double NormSpec::p() const {
  if (!p_) fail(ErrorCode::InvalidArgument, "infinity norm has no finite index");
  return *p_;
}

std::string NormSpec::label() const {
  if (!p_) return "inf";
  std::ostringstream os;
  os << *p_;
  return os.str();
}

DegreeVector degree_vector(const Graph& g) {
  DegreeVector d(g.num_vertices());
  for (std::size_t v = 0; v < d.size(); ++v)
    d[v] = static_cast<std::int64_t>(g.degree(static_cast<Vertex>(v)));
  return d;
}

long double power_sum(std::span<const std::int64_t> values, double p) {
  long double s = 0;
  if (p == 1.0) {
    for (auto x : values) s += static_cast<long double>(x);
  } else if (p == 2.0) {
    for (auto x : values) s += static_cast<long double>(x) * static_cast<long double>(x);
  } else {
    for (auto x : values)
      if (x != 0) s += std::pow(static_cast<long double>(x), static_cast<long double>(p));
  }
  return s;
}

double norm_of(std::span<const std::int64_t> values, const NormSpec& p) {
  if (p.is_infinite()) {
    std::int64_t m = 0;
    for (auto x : values) m = std::max(m, x < 0 ? -x : x);
    return static_cast<double>(m);
  }
  long double s = power_sum(values, p.p());
  if (p.p() == 1.0) return static_cast<double>(s);
  if (p.p() == 2.0) return static_cast<double>(std::sqrt(s));
  return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p.p())));
}

double lp_norm(const Graph& g, const NormSpec& p) {
  auto d = degree_vector(g);
  return norm_of(d, p);
}

double subset_norm(const Graph& g, std::span<const Vertex> subset, const NormSpec& p) {
  DegreeVector d;
  d.reserve(subset.size());
  for (Vertex v : subset) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices())
      fail(ErrorCode::InvalidArgument, "subset vertex out of range");
    d.push_back(static_cast<std::int64_t>(g.degree(v)));
  }
  return norm_of(d, p);
}

namespace {

// BFS workspace reused across sources; dist is reset lazily via the touched list.
struct HopBfs {
  std::vector<std::int32_t> dist;
  std::vector<Vertex> queue;
  explicit HopBfs(std::size_t n) : dist(n, -1) { queue.reserve(n); }

  void run(const Graph& g, Vertex s, std::size_t r, std::vector<std::int64_t>& counts) {
    counts.assign(r + 1, 0);
    queue.clear();
    queue.push_back(s);
    dist[static_cast<std::size_t>(s)] = 0;
    counts[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      auto du = static_cast<std::size_t>(dist[static_cast<std::size_t>(u)]);
      if (du == r) continue;
      for (const auto& a : g.neighbors(u)) {
        auto& dw = dist[static_cast<std::size_t>(a.vertex)];
        if (dw < 0) {
          dw = static_cast<std::int32_t>(du + 1);
          ++counts[du + 1];
          queue.push_back(a.vertex);
        }
      }
    }
    for (Vertex v : queue) dist[static_cast<std::size_t>(v)] = -1;
  }
};

}  // namespace

LayerProfile layer_profile(const Graph& g, Vertex v, std::size_t r) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices())
    fail(ErrorCode::InvalidArgument, "vertex out of range");
  HopBfs bfs(g.num_vertices());
  LayerProfile lp;
  lp.source = v;
  bfs.run(g, v, r, lp.counts);
  return lp;
}

std::vector<LayerProfile> layer_profiles(const Graph& g, std::size_t r) {
  HopBfs bfs(g.num_vertices());
  std::vector<LayerProfile> out(g.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) {
    out[v].source = static_cast<Vertex>(v);
    bfs.run(g, static_cast<Vertex>(v), r, out[v].counts);
  }
  return out;
}

std::string Girth::label() const { return length ? std::to_string(*length) : "unbounded"; }

Girth girth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::int32_t> dist(n, -1);
  std::vector<EdgeId> via(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (g.degree(static_cast<Vertex>(s)) < 2) continue;
    queue.clear();
    queue.push_back(static_cast<Vertex>(s));
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      auto du = static_cast<std::size_t>(dist[static_cast<std::size_t>(u)]);
      // any cycle found beyond this depth is no shorter than the best one
      if (2 * du + 1 >= best) break;
      for (const auto& a : g.neighbors(u)) {
        if (a.edge == via[static_cast<std::size_t>(u)]) continue;
        auto w = static_cast<std::size_t>(a.vertex);
        if (dist[w] < 0) {
          dist[w] = static_cast<std::int32_t>(du + 1);
          via[w] = a.edge;
          queue.push_back(a.vertex);
        } else {
          best = std::min(best, du + static_cast<std::size_t>(dist[w]) + 1);
        }
      }
    }
    for (Vertex v : queue) {
      dist[static_cast<std::size_t>(v)] = -1;
      via[static_cast<std::size_t>(v)] = -1;
    }
  }
  Girth out;
  if (best != std::numeric_limits<std::size_t>::max()) out.length = best;
  return out;
}

std::vector<double> shortest_paths(const Graph& g, Vertex source) {
  const std::size_t n = g.num_vertices();
  if (source < 0 || static_cast<std::size_t>(source) >= n)
    fail(ErrorCode::InvalidArgument, "source out of range");
  std::vector<double> dist(n, kInfinite);
  dist[static_cast<std::size_t>(source)] = 0;
  if (!g.weighted()) {
    std::vector<Vertex> queue{source};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      for (const auto& a : g.neighbors(u)) {
        auto& dw = dist[static_cast<std::size_t>(a.vertex)];
        if (dw == kInfinite) {
          dw = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(a.vertex);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& a : g.neighbors(u)) {
      double nd = d + g.length(a.edge);
      auto& dw = dist[static_cast<std::size_t>(a.vertex)];
      if (nd < dw) {
        dw = nd;
        pq.push({nd, a.vertex});
      }
    }
  }
  return dist;
}

}  // namespace spanorm
