#include "spanorm/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spanorm/error.hpp"
#include "spanorm/rng.hpp"

namespace spanorm {

namespace {

bool is_prime(std::size_t r) {
  if (r < 2) return false;
  for (std::size_t d = 2; d * d <= r; ++d)
    if (r % d == 0) return false;
  return true;
}

// (r, e) with q = r^e, or (0, 0).
std::pair<std::size_t, std::size_t> factor_prime_power(std::size_t q) {
  for (std::size_t r = 2; r <= q; ++r) {
    if (q % r) continue;
    if (!is_prime(r)) return {0, 0};
    std::size_t e = 0, x = q;
    while (x % r == 0) x /= r, ++e;
    return x == 1 ? std::make_pair(r, e) : std::make_pair<std::size_t, std::size_t>(0, 0);
  }
  return {0, 0};
}

using Poly = std::vector<std::size_t>;  // coefficients, low degree first

Poly to_poly(std::size_t a, std::size_t r, std::size_t e) {
  Poly p(e);
  for (std::size_t i = 0; i < e; ++i) p[i] = a % r, a /= r;
  return p;
}

std::size_t from_poly(const Poly& p, std::size_t r) {
  std::size_t a = 0;
  for (std::size_t i = p.size(); i-- > 0;) a = a * r + p[i];
  return a;
}

}  // namespace

bool is_prime_power(std::size_t q) { return factor_prime_power(q).first != 0; }

GaloisField::GaloisField(std::size_t q) : q_(q) {
  auto [r, e] = factor_prime_power(q);
  require(r != 0, "GF(q) needs a prime power q, got " + std::to_string(q));
  require(e <= 3, "GF(q) supports extension degree at most 3");
  // Monic irreducible of degree e: for e <= 3 irreducible iff it has no root.
  Poly modulus;
  if (e > 1) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(std::pow(r, e)); ++c) {
      Poly m = to_poly(c, r, e);
      m.push_back(1);
      bool root = false;
      for (std::size_t x = 0; x < r && !root; ++x) {
        std::size_t v = 0;
        for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % r;
        root = v == 0;
      }
      if (!root) {
        modulus = m;
        break;
      }
    }
  }
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  for (std::size_t a = 0; a < q; ++a) {
    Poly pa = to_poly(a, r, e);
    Poly na(e);
    for (std::size_t i = 0; i < e; ++i) na[i] = (r - pa[i]) % r;
    neg_[a] = from_poly(na, r);
    for (std::size_t b = 0; b < q; ++b) {
      Poly pb = to_poly(b, r, e);
      Poly s(e);
      for (std::size_t i = 0; i < e; ++i) s[i] = (pa[i] + pb[i]) % r;
      add_[a * q + b] = from_poly(s, r);
      Poly prod(2 * e, 0);
      for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % r;
      for (std::size_t d = prod.size(); d-- > e;) {
        std::size_t c = prod[d];
        if (!c) continue;
        for (std::size_t i = 0; i <= e; ++i)
          prod[d - e + i] = (prod[d - e + i] + (r - (c * modulus[i]) % r)) % r;
      }
      prod.resize(e);
      mul_[a * q + b] = from_poly(prod, r);
    }
  }
}

namespace {

// Normalized points of PG(dim-1, q): first nonzero coordinate is 1.
std::vector<std::vector<std::size_t>> projective_points(const GaloisField& f, std::size_t dim) {
  const std::size_t q = f.order();
  std::vector<std::vector<std::size_t>> pts;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= q;
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<std::size_t> v(dim);
    std::size_t c = code;
    for (std::size_t i = dim; i-- > 0;) v[i] = c % q, c /= q;
    auto lead = std::find_if(v.begin(), v.end(), [](std::size_t x) { return x != 0; });
    if (*lead == 1) pts.push_back(v);
  }
  return pts;
}

std::size_t dot(const GaloisField& f, const std::vector<std::size_t>& a,
                const std::vector<std::size_t>& b) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

Graph projective_plane_incidence(std::size_t q) {
  GaloisField f(q);
  auto pts = projective_points(f, 3);
  const std::size_t m = pts.size();
  GraphBuilder b(2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (dot(f, pts[i], pts[j]) == 0)
        b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(m + j));
  return b.build();
}

Graph gq_incidence(std::size_t q) {
  GaloisField f(q);
  auto pts = projective_points(f, 4);
  const std::size_t m = pts.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[pts[i]] = i;
  auto form = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::size_t s = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    return f.add(s, f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2])));
  };
  auto normalize = [&](std::vector<std::size_t> v) {
    auto lead = std::find_if(v.begin(), v.end(), [](std::size_t x) { return x != 0; });
    std::size_t inv = 1;
    while (f.mul(*lead, inv) != 1) ++inv;
    for (auto& x : v) x = f.mul(x, inv);
    return v;
  };
  // Each totally isotropic line as the sorted set of its q+1 points.
  std::set<std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (form(pts[i], pts[j]) != 0) continue;
      std::vector<std::size_t> line{i, j};
      for (std::size_t a = 1; a < q; ++a) {
        std::vector<std::size_t> v(4);
        for (std::size_t c = 0; c < 4; ++c) v[c] = f.add(pts[i][c], f.mul(a, pts[j][c]));
        line.push_back(index.at(normalize(v)));
      }
      std::sort(line.begin(), line.end());
      if (line[0] == i && line[1] == j) lines.insert(line);
    }
  GraphBuilder b(m + lines.size());
  std::size_t l = m;
  for (const auto& line : lines) {
    for (auto x : line) b.add_edge(static_cast<Vertex>(x), static_cast<Vertex>(l));
    ++l;
  }
  return b.build();
}

Graph lcf_graph(std::size_t n, const std::vector<int>& shifts, std::size_t repeats) {
  require(n >= 3 && !shifts.empty(), "LCF needs n >= 3 and a shift list");
  require(shifts.size() * repeats == n, "LCF shift list does not cover the cycle");
  std::set<std::pair<Vertex, Vertex>> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    Vertex u = static_cast<Vertex>(a % n), v = static_cast<Vertex>(b % n);
    if (u > v) std::swap(u, v);
    if (u != v) edges.insert({u, v});
  };
  for (std::size_t i = 0; i < n; ++i) {
    add(i, i + 1);
    long s = shifts[i % shifts.size()];
    add(i, static_cast<std::size_t>((static_cast<long>(i) + s % static_cast<long>(n) +
                                     static_cast<long>(n)) %
                                    static_cast<long>(n)));
  }
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

Graph petersen_graph() {
  GraphBuilder b(10);
  for (Vertex i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(i, i + 5);
    b.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return b.build();
}

Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return b.build();
}

Graph complete_bipartite(std::size_t a, std::size_t c) {
  GraphBuilder b(a + c);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < c; ++j) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(a + j));
  return b.build();
}

Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle needs n >= 3");
  GraphBuilder b(n);
  for (std::size_t i = 0; i < n; ++i)
    b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return b.build();
}

Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t i = 0; i + 1 < n; ++i) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return b.build();
}

Graph star_graph(std::size_t leaves) {
  GraphBuilder b(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) b.add_edge(0, static_cast<Vertex>(i));
  return b.build();
}

const std::vector<NamedGraphInfo>& named_graphs() {
  static const std::vector<NamedGraphInfo> list = {
      {"petersen", 10, 3, 5},  {"heawood", 14, 3, 6},       {"mcgee", 24, 3, 7},
      {"robertson", 19, 4, 5}, {"tutte_coxeter", 30, 3, 8}, {"pg2_2", 14, 3, 6},
      {"pg2_3", 26, 4, 6},     {"pg2_4", 42, 5, 6},         {"pg2_5", 62, 6, 6},
  };
  return list;
}

Graph named_girth_graph(const std::string& name) {
  Graph g;
  if (name == "petersen") g = petersen_graph();
  else if (name == "heawood" || name == "pg2_2") g = projective_plane_incidence(2);
  else if (name == "pg2_3") g = projective_plane_incidence(3);
  else if (name == "pg2_4") g = projective_plane_incidence(4);
  else if (name == "pg2_5") g = projective_plane_incidence(5);
  else if (name == "mcgee") g = lcf_graph(24, {12, 7, -7}, 8);
  else if (name == "tutte_coxeter") g = lcf_graph(30, {-13, -9, 7, -7, 9, 13}, 5);
  else if (name == "robertson") {
    const std::vector<int> chords{8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4};
    GraphBuilder b(19);
    for (Vertex i = 0; i < 19; ++i) {
      b.add_edge(i, (i + 1) % 19);
      b.add_edge(i, (i + chords[static_cast<std::size_t>(i)]) % 19);
    }
    g = b.build();
  } else {
    fail(ErrorCode::UnknownName, "unknown named graph '" + name + "'");
  }
  const auto& list = named_graphs();
  auto it = std::find_if(list.begin(), list.end(), [&](const auto& i) { return i.name == name; });
  const auto gg = girth(g);
  if (g.num_vertices() != it->n || g.min_degree() != it->degree || g.max_degree() != it->degree ||
      !gg.length || *gg.length != it->girth)
    fail(ErrorCode::Construction, name + " failed its (n, degree, girth) check");
  return g;
}

Graph cyclic_lift(const Graph& base, std::size_t N, std::uint64_t seed) {
  require(N >= 1, "lift order must be positive");
  KeyedRng rng({seed, base.num_vertices(), base.num_edges(), N});
  GraphBuilder b(base.num_vertices() * N);
  for (const auto& e : base.edges()) {
    std::size_t a = rng.below(N);
    for (std::size_t i = 0; i < N; ++i)
      b.add_edge(static_cast<Vertex>(static_cast<std::size_t>(e.u) * N + i),
                 static_cast<Vertex>(static_cast<std::size_t>(e.v) * N + (i + a) % N));
  }
  return b.build();
}

namespace {

// Hop distance from s to t in adjacency lists, or limit if it exceeds limit - 1.
std::size_t bounded_distance(const std::vector<std::vector<std::size_t>>& adj, std::size_t s,
                             std::size_t t, std::size_t limit, std::vector<std::size_t>& dist,
                             std::vector<std::size_t>& touched) {
  if (s == t) return 0;
  std::size_t found = limit;
  std::vector<std::size_t> frontier{s}, next;
  dist[s] = 0;
  touched.push_back(s);
  for (std::size_t d = 1; d < limit && !frontier.empty() && found == limit; ++d) {
    next.clear();
    for (auto x : frontier)
      for (auto y : adj[x]) {
        if (dist[y] != static_cast<std::size_t>(-1)) continue;
        dist[y] = d;
        touched.push_back(y);
        if (y == t) found = d;
        next.push_back(y);
      }
    frontier.swap(next);
  }
  for (auto x : touched) dist[x] = static_cast<std::size_t>(-1);
  touched.clear();
  return found;
}

}  // namespace

LiftResult high_girth_lift(const Graph& base, std::size_t min_girth, std::size_t N,
                           std::uint64_t seed, std::size_t max_attempts) {
  require(N >= 1 && min_girth >= 3, "lift needs N >= 1 and min_girth >= 3");
  LiftResult out;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1 && (attempt - 1) % 4 == 0) N *= 2;
    const std::uint64_t s = seed + attempt - 1;
    const std::size_t nv = base.num_vertices() * N;
    std::vector<std::vector<std::size_t>> adj(nv);
    std::vector<std::size_t> dist(nv, static_cast<std::size_t>(-1)), touched;
    std::vector<std::size_t> voltage;
    KeyedRng rng({s, base.num_vertices(), base.num_edges(), N, min_girth});
    bool ok = true;
    for (const auto& e : base.edges()) {
      const std::size_t u0 = static_cast<std::size_t>(e.u) * N;
      const std::size_t v0 = static_cast<std::size_t>(e.v) * N;
      // Voltages are tried in a random cyclic order; the cyclic group acts
      // transitively on the copies, so one copy decides the cycle length.
      const std::size_t start = rng.below(N);
      std::size_t chosen = N;
      for (std::size_t k = 0; k < N && chosen == N; ++k) {
        const std::size_t a = (start + k) % N;
        if (bounded_distance(adj, u0, v0 + a, min_girth - 1, dist, touched) >= min_girth - 1)
          chosen = a;
      }
      if (chosen == N) {
        ok = false;
        break;
      }
      voltage.push_back(chosen);
      for (std::size_t i = 0; i < N; ++i) {
        adj[u0 + i].push_back(v0 + (i + chosen) % N);
        adj[v0 + (i + chosen) % N].push_back(u0 + i);
      }
    }
    if (!ok) continue;
    GraphBuilder b(nv);
    for (std::size_t x = 0; x < nv; ++x)
      for (auto y : adj[x])
        if (x < y) b.add_edge(static_cast<Vertex>(x), static_cast<Vertex>(y));
    Graph g = b.build();
    auto gg = girth(g);
    if (!gg.at_least(min_girth)) continue;
    out.graph = std::move(g);
    out.N = N;
    out.seed = s;
    out.attempts = attempt;
    out.girth = gg.length.value_or(0);
    return out;
  }
  fail(ErrorCode::Construction, "no lift of girth >= " + std::to_string(min_girth) + " found");
}

Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - (n ? 1 : 0)) / 2;
  require(m <= pairs, "too many edges requested");
  KeyedRng rng({seed, n, m});
  GraphBuilder b(n);
  for (auto code : rng.sample(pairs, m)) {
    // code -> (i, j), i < j, row-major over the upper triangle
    std::uint64_t i = 0, rem = code;
    while (rem >= n - 1 - i) rem -= n - 1 - i, ++i;
    b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1 + rem));
  }
  return b.build();
}

Graph random_connected_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 1 && m + 1 >= n, "connected graph needs m >= n - 1");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  require(m <= pairs, "too many edges requested");
  KeyedRng rng({seed, n, m, 1});
  std::set<std::pair<Vertex, Vertex>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    Vertex u = static_cast<Vertex>(rng.below(v));
    edges.insert({u, static_cast<Vertex>(v)});
  }
  while (edges.size() < m) {
    Vertex u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
    if (u == v) continue;
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

}  // namespace spanorm
