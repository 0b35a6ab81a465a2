#include "spanorm/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

constexpr double kTieTolerance = 1e-12;

// Canonical ranking key: sum of d^p over the sorted degrees (max degree for
// p = inf), so equal degree multisets give bit-identical keys.
class NormKey {
 public:
  explicit NormKey(const NormSpec& p) : p_(p) {}
  double operator()(const std::vector<std::int64_t>& deg) const {
    if (p_.is_infinite()) return static_cast<double>(*std::max_element(deg.begin(), deg.end()));
    buf_ = deg;
    std::sort(buf_.begin(), buf_.end());
    long double s = 0;
    for (auto d : buf_)
      if (d > 0) s += std::pow(static_cast<long double>(d), static_cast<long double>(p_.p()));
    return static_cast<double>(s);
  }
  double to_norm(double key) const {
    return p_.is_infinite() ? key : std::pow(key, 1.0 / p_.p());
  }

 private:
  NormSpec p_;
  mutable std::vector<std::int64_t> buf_;
};

bool better(double key, const std::vector<EdgeId>& kept, double best_key,
            const std::vector<EdgeId>& best_kept) {
  const double tol = kTieTolerance * std::max(1.0, best_key);
  if (key < best_key - tol) return true;
  if (key > best_key + tol) return false;
  return kept < best_kept;
}

// Stretch of the edges in `check` inside the subgraph given by `on`.
class Feasibility {
 public:
  Feasibility(const Graph& g, std::size_t t) : g_(g), t_(t), dist_(g.num_vertices()) {}

  bool ok(const std::vector<char>& on, const std::vector<EdgeId>& check) {
    for (EdgeId e : check) {
      const auto& ed = g_.edge(e);
      if (!within(on, ed.u, ed.v, static_cast<double>(t_) * g_.length(e))) return false;
    }
    return true;
  }

 private:
  bool within(const std::vector<char>& on, Vertex s, Vertex goal, double bound) {
    // Dijkstra with an early exit; graphs here have at most a few dozen edges
    std::fill(dist_.begin(), dist_.end(), kInfinite);
    using Item = std::pair<double, Vertex>;
    std::vector<Item> heap{{0.0, s}};
    dist_[static_cast<std::size_t>(s)] = 0;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      auto [d, u] = heap.back();
      heap.pop_back();
      if (d > dist_[static_cast<std::size_t>(u)]) continue;
      if (u == goal) return length_within(d, bound);
      if (!length_within(d, bound)) return false;
      for (const auto& a : g_.neighbors(u)) {
        if (!on[static_cast<std::size_t>(a.edge)]) continue;
        const double nd = d + g_.length(a.edge);
        auto& cur = dist_[static_cast<std::size_t>(a.vertex)];
        if (nd < cur) {
          cur = nd;
          heap.emplace_back(nd, a.vertex);
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
      }
    }
    return false;
  }

  const Graph& g_;
  std::size_t t_;
  std::vector<double> dist_;
};

struct Search {
  const Graph& g;
  NormKey key;
  Feasibility feas;
  std::vector<EdgeId> order;
  std::vector<char> on;          // included or undecided
  std::vector<char> decided;
  std::vector<std::int64_t> deg;  // degrees of included edges
  std::vector<EdgeId> excluded;
  double best_key;
  std::vector<EdgeId> best_kept;
  std::uint64_t explored = 0, pruned = 0;

  void run(std::size_t depth) {
    ++explored;
    const double lb = key(deg);
    if (lb > best_key + kTieTolerance * std::max(1.0, best_key)) {
      ++pruned;
      return;
    }
    if (depth == order.size()) {
      std::vector<EdgeId> kept;
      for (std::size_t e = 0; e < on.size(); ++e)
        if (on[e]) kept.push_back(static_cast<EdgeId>(e));
      if (better(lb, kept, best_key, best_kept)) best_key = lb, best_kept = std::move(kept);
      return;
    }
    const EdgeId e = order[depth];
    const auto& ed = g.edge(e);
    // include
    ++deg[static_cast<std::size_t>(ed.u)];
    ++deg[static_cast<std::size_t>(ed.v)];
    run(depth + 1);
    --deg[static_cast<std::size_t>(ed.u)];
    --deg[static_cast<std::size_t>(ed.v)];
    // exclude, if everything excluded so far stays within stretch
    on[static_cast<std::size_t>(e)] = 0;
    excluded.push_back(e);
    if (feas.ok(on, excluded)) {
      run(depth + 1);
    } else {
      ++pruned;
    }
    excluded.pop_back();
    on[static_cast<std::size_t>(e)] = 1;
  }
};

}  // namespace

OracleResult optimal_spanner(const Graph& g, std::size_t t, const NormSpec& p,
                             const OracleOptions& opts) {
  require(t >= 1, "stretch must be at least 1");
  const std::size_t m = g.num_edges(), n = g.num_vertices();
  const std::size_t limit = opts.prune ? opts.max_pruned_edges : opts.max_exhaustive_edges;
  if (m > limit)
    fail(ErrorCode::SizeLimit, "oracle limit is " + std::to_string(limit) + " edges, got " +
                                   std::to_string(m));
  const Spanner greedy = greedy_spanner(g, t);
  NormKey key(p);
  auto degrees_of = [&](const std::vector<EdgeId>& kept) {
    std::vector<std::int64_t> d(n, 0);
    for (EdgeId e : kept) ++d[static_cast<std::size_t>(g.edge(e).u)], ++d[static_cast<std::size_t>(g.edge(e).v)];
    return d;
  };

  // greedy edges first, then the rest; edge ids within each group
  std::vector<char> in_greedy(m, 0);
  for (EdgeId e : greedy.kept_edges) in_greedy[static_cast<std::size_t>(e)] = 1;
  std::vector<EdgeId> order;
  for (std::size_t e = 0; e < m; ++e) if (in_greedy[e]) order.push_back(static_cast<EdgeId>(e));
  for (std::size_t e = 0; e < m; ++e) if (!in_greedy[e]) order.push_back(static_cast<EdgeId>(e));

  OracleResult res;
  res.exhaustive = !opts.prune;
  double best_key = n ? key(degrees_of(greedy.kept_edges)) : 0;
  std::vector<EdgeId> best_kept = greedy.kept_edges;

  if (n == 0 || m == 0) {
    best_key = 0;
    best_kept.clear();
  } else if (opts.prune) {
    Search s{g, key, Feasibility(g, t), order, std::vector<char>(m, 1), std::vector<char>(m, 0),
             std::vector<std::int64_t>(n, 0), {}, best_key, best_kept};
    s.run(0);
    best_key = s.best_key;
    best_kept = std::move(s.best_kept);
    res.explored = s.explored;
    res.pruned = s.pruned;
  } else {
    // Gray code over all 2^m subsets; bit j toggles order[m-1-j], so the
    // non-greedy edges change most often
    Feasibility feas(g, t);
    std::vector<char> on(m, 0);
    std::vector<std::int64_t> deg(n, 0);
    std::vector<EdgeId> all(m);
    std::iota(all.begin(), all.end(), 0);
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t i = 0; i < total; ++i) {
      if (i > 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(i));
        const EdgeId e = order[m - 1 - bit];
        const auto& ed = g.edge(e);
        const std::int64_t delta = on[static_cast<std::size_t>(e)] ? -1 : 1;
        on[static_cast<std::size_t>(e)] ^= 1;
        deg[static_cast<std::size_t>(ed.u)] += delta;
        deg[static_cast<std::size_t>(ed.v)] += delta;
      }
      ++res.explored;
      const double k = key(deg);
      if (k > best_key + kTieTolerance * std::max(1.0, best_key)) continue;
      std::vector<EdgeId> kept;
      for (std::size_t e = 0; e < m; ++e)
        if (on[e]) kept.push_back(static_cast<EdgeId>(e));
      if (!better(k, kept, best_key, best_kept)) continue;
      if (!feas.ok(on, all)) continue;
      best_key = k;
      best_kept = std::move(kept);
    }
  }

  res.optimum.graph = g.edge_subgraph(best_kept);
  res.optimum.kept_edges = std::move(best_kept);
  res.optimum.t = t;
  res.optimum.provenance = Provenance::Oracle;
  res.optimum_norm = lp_norm(res.optimum.graph, p);
  return res;
}

double greedy_ratio(const Graph& g, const OracleResult& opt, const NormSpec& p) {
  if (opt.optimum_norm <= 0) return 1.0;
  const double greedy = lp_norm(greedy_spanner(g, opt.optimum.t).graph, p);
  return greedy / opt.optimum_norm;
}

double greedy_ratio(const Graph& g, std::size_t t, const NormSpec& p, const OracleOptions& opts) {
  return greedy_ratio(g, optimal_spanner(g, t, p, opts), p);
}

bool BallGrowthReport::lemma_holds() const {
  return std::all_of(rows.begin(), rows.end(), [](const BallGrowthRow& r) { return r.holds; });
}

BallGrowthReport ball_growth_check(const Graph& h, double p2_norm, std::size_t r_max) {
  BallGrowthReport rep;
  rep.n = h.num_vertices();
  for (auto d : degree_vector(h)) rep.square_sum += d * d;
  const double actual = std::sqrt(static_cast<double>(rep.square_sum));
  require(std::abs(p2_norm - actual) <= 1e-9 * std::max(1.0, actual),
          "p2_norm does not match the 2-norm of h");
  if (rep.n < 2) return rep;
  const double n = static_cast<double>(rep.n);
  rep.alpha = actual > 0 ? std::log(actual) / std::log(n) : 0;
  auto profiles = layer_profiles(h, r_max);
  std::vector<std::int64_t> ball(rep.n);
  for (std::size_t r = 1; r <= r_max; ++r) {
    BallGrowthRow row;
    row.r = r;
    row.bound = std::pow(n, (2 - std::pow(2.0, 1.0 - static_cast<double>(r))) * rep.alpha);
    for (std::size_t v = 0; v < rep.n; ++v) {
      const std::int64_t prev = ball[v] ? ball[v] : profiles[v].at(0);
      ball[v] = prev + profiles[v].at(r);
      if (ball[v] > row.max_ball) row.max_ball = ball[v], row.argmax = static_cast<Vertex>(v);
      if (r >= 2) {
        ++rep.inductive_checked;
        // |B(v,r)|^2 <= |B(v,r-1)| * sum d^2, in integers
        const auto lhs = static_cast<__int128>(ball[v]) * ball[v];
        const auto rhs = static_cast<__int128>(prev) * rep.square_sum;
        if (lhs > rhs) ++rep.inductive_violations;
      }
    }
    row.holds = static_cast<double>(row.max_ball) <= row.bound * (1 + 1e-12);
    rep.rows.push_back(row);
  }
  return rep;
}

TwoPathCount two_path_count(const Graph& h) {
  TwoPathCount c;
  const std::size_t n = h.num_vertices();
  std::int64_t sum_dd1 = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto d = static_cast<std::int64_t>(h.degree(static_cast<Vertex>(v)));
    c.middle += d * d;
    sum_dd1 += d * (d - 1);
  }
  std::vector<std::size_t> seen(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& a : h.neighbors(static_cast<Vertex>(v))) {
      for (const auto& b : h.neighbors(a.vertex)) {
        ++c.walks;
        const auto u = static_cast<std::size_t>(b.vertex);
        if (u != v && seen[u] != v) {
          seen[u] = v;
          ++c.distinct_pairs;
        }
      }
    }
  }
  c.girth_at_least_5 = girth(h).at_least(5);
  c.consistent = c.walks == c.middle && (!c.girth_at_least_5 || c.distinct_pairs == sum_dd1);
  return c;
}

}  // namespace spanorm
