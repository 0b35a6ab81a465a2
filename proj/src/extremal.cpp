#include "spanorm/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bounded_search.hpp"
#include "spanorm/error.hpp"
#include "spanorm/families.hpp"
#include "spanorm/greedy.hpp"
#include "spanorm/rng.hpp"

namespace spanorm {

std::uint64_t DegreeHistogram::num_vertices() const {
  std::uint64_t n = 0;
  for (auto [d, c] : counts) n += c;
  return n;
}

std::int64_t DegreeHistogram::max_degree() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

long double DegreeHistogram::power_sum(double p) const {
  long double s = 0;
  for (auto [d, c] : counts)
    if (d > 0) s += static_cast<long double>(c) * std::pow(static_cast<long double>(d), p);
  return s;
}

double DegreeHistogram::norm(const NormSpec& p) const {
  if (p.is_infinite()) return static_cast<double>(max_degree());
  return static_cast<double>(std::pow(power_sum(p.p()), 1.0L / p.p()));
}

DegreeHistogram DegreeHistogram::of(const Graph& g) {
  DegreeHistogram h;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    h.add(static_cast<std::int64_t>(g.degree(static_cast<Vertex>(v))), 1);
  return h;
}

const char* to_string(PairKind k) {
  switch (k) {
    case PairKind::Digit: return "digit";
    case PairKind::Grow: return "grow";
    case PairKind::Shrink: return "shrink";
    case PairKind::Block: return "block";
  }
  return "unknown";
}

std::uint64_t LayeredInstance::num_vertices() const {
  std::uint64_t n = 0;
  for (auto s : sizes) n += s;
  return n;
}

std::uint64_t LayeredInstance::offset(std::size_t layer) const {
  std::uint64_t o = 0;
  for (std::size_t i = 0; i < layer; ++i) o += sizes[i];
  return o;
}

ExponentPair predicted_exponents(const LcrParams& s, double p) {
  ExponentPair e;
  if (s.C > 0) {
    const double el = e_coeff<double>(s.C, s.L, p), er = e_coeff<double>(s.C, s.R, p);
    e.lambda = (el / p + er) / er;
    e.ell = (1 / p + 1.0 / static_cast<double>(s.C)) / er;
  } else {
    require(s.L >= 1 && s.R >= 1, "C = 0 needs L, R >= 1");
    const double el = e_coeff<double>(1, s.L, p) - 1, er = e_coeff<double>(1, s.R, p) - 1;
    e.lambda = (el / p + er) / er;
    e.ell = 1 / er;
  }
  return e;
}

namespace {

constexpr double kFloorGuard = 1e-9;

std::uint64_t floor_size(double x) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(x + kFloorGuard)));
}

// C radices, each floor(target^{1/C}) or one more, with product <= target.
std::vector<std::uint64_t> choose_digits(double target, std::size_t C) {
  std::vector<std::uint64_t> d(C, floor_size(std::pow(target, 1.0 / static_cast<double>(C))));
  long double prod = 1;
  for (auto x : d) prod *= static_cast<long double>(x);
  for (std::size_t i = 0; i < C; ++i) {
    long double next = prod / static_cast<long double>(d[i]) * static_cast<long double>(d[i] + 1);
    if (next <= static_cast<long double>(target) + kFloorGuard) {
      prod = next;
      ++d[i];
    }
  }
  return d;
}

std::uint64_t product(const std::vector<std::uint64_t>& d) {
  std::uint64_t p = 1;
  for (auto x : d) p *= x;
  return p;
}

// Outer layers leaving a layer of real size `start`: every pair contributes
// K = n_L c^p, so n_j = n_{j-1} (K / n_{j-1})^{1/p}.
std::vector<double> outer_sizes(double start, double K, double p, std::size_t count) {
  std::vector<double> out;
  double s = start;
  for (std::size_t j = 0; j < count; ++j) {
    s *= std::pow(K / s, 1 / p);
    out.push_back(s);
  }
  return out;
}

LayerPair star_pair(std::uint64_t a, std::uint64_t b) {
  LayerPair lp;
  if (a <= b) {
    lp.kind = PairKind::Grow;
    lp.edges = b;
    lp.left_base = static_cast<std::int64_t>(b / a);
    lp.left_extra = b % a;
    lp.right_base = 1;
  } else {
    lp.kind = PairKind::Shrink;
    lp.edges = a;
    lp.left_base = 1;
    lp.right_base = static_cast<std::int64_t>(a / b);
    lp.right_extra = a % b;
  }
  return lp;
}

LayerPair digit_pair(std::uint64_t size, std::uint64_t radix, std::uint64_t weight,
                     std::uint64_t period) {
  LayerPair lp;
  lp.kind = PairKind::Digit;
  lp.radix = radix;
  lp.digit_weight = weight;
  lp.period = period;
  lp.edges = size * radix;
  lp.left_base = lp.right_base = static_cast<std::int64_t>(radix);
  return lp;
}

LayerPair block_pair(std::uint64_t period, std::uint64_t skew, std::uint64_t fan, bool centre_on_left) {
  LayerPair lp;
  lp.kind = PairKind::Block;
  lp.period = period;
  lp.skew = skew;
  lp.fan = fan;
  lp.centre_on_left = centre_on_left;
  lp.edges = period * skew * fan;
  const auto centre = static_cast<std::int64_t>(fan), outer = static_cast<std::int64_t>(skew);
  lp.left_base = centre_on_left ? centre : outer;
  lp.right_base = centre_on_left ? outer : centre;
  return lp;
}

// Adds the degrees of one layer: base + [j < r1] + [j < r2].
void add_layer(DegreeHistogram& h, std::uint64_t size, std::int64_t base, std::uint64_t r1,
               std::uint64_t r2) {
  const std::uint64_t lo = std::min({r1, r2, size}), hi = std::min(std::max(r1, r2), size);
  h.add(base + 2, lo);
  h.add(base + 1, hi - lo);
  h.add(base, size - hi);
}

void fill_histograms(LayeredInstance& inst) {
  const std::size_t t = inst.t;
  inst.spanner_degrees = {};
  inst.host_degrees = {};
  for (std::size_t i = 0; i <= t; ++i) {
    std::int64_t base = 0;
    std::uint64_t r1 = 0, r2 = 0;
    if (i > 0) base += inst.pairs[i - 1].right_base, r1 = inst.pairs[i - 1].right_extra;
    if (i < t) base += inst.pairs[i].left_base, r2 = inst.pairs[i].left_extra;
    add_layer(inst.spanner_degrees, inst.sizes[i], base, r1, r2);
    std::int64_t extra = 0;
    if (i == 0) extra += static_cast<std::int64_t>(inst.sizes[t]);
    if (i == t) extra += static_cast<std::int64_t>(inst.sizes[0]);
    add_layer(inst.host_degrees, inst.sizes[i], base + extra, r1, r2);
  }
}

Graph materialize(const LayeredInstance& inst) {
  GraphBuilder b(inst.num_vertices());
  std::uint64_t off = 0;
  for (std::size_t i = 0; i < inst.t; ++i) {
    const std::uint64_t a = inst.sizes[i], c = inst.sizes[i + 1], off2 = off + a;
    const auto& lp = inst.pairs[i];
    auto edge = [&](std::uint64_t x, std::uint64_t y) {
      b.add_edge(static_cast<Vertex>(off + x), static_cast<Vertex>(off2 + y));
    };
    switch (lp.kind) {
      case PairKind::Digit:
        for (std::uint64_t x = 0; x < a; ++x) {
          const std::uint64_t m = x % lp.period, sheet = x / lp.period;
          const std::uint64_t dv = (m / lp.digit_weight) % lp.radix;
          const std::uint64_t m0 = m - dv * lp.digit_weight;
          for (std::uint64_t v = 0; v < lp.radix; ++v) edge(x, sheet * lp.period + m0 + v * lp.digit_weight);
        }
        break;
      case PairKind::Grow:
        for (std::uint64_t y = 0; y < c; ++y) edge(y % a, y);
        break;
      case PairKind::Shrink:
        for (std::uint64_t x = 0; x < a; ++x) edge(x, x % c);
        break;
      case PairKind::Block:
        if (lp.centre_on_left) {
          for (std::uint64_t x = 0; x < a; ++x)
            for (std::uint64_t k = 0; k < lp.fan; ++k) edge(x, (x % lp.period) * lp.fan + k);
        } else {
          for (std::uint64_t y = 0; y < c; ++y)
            for (std::uint64_t k = 0; k < lp.fan; ++k) edge((y % lp.period) * lp.fan + k, y);
        }
        break;
    }
    off = off2;
  }
  return b.build();
}

Graph add_biclique(const Graph& spanner, const LayeredInstance& inst) {
  GraphBuilder b(spanner.num_vertices());
  for (const auto& e : spanner.edges()) b.add_edge(e.u, e.v);
  const std::uint64_t last = inst.offset(inst.t);
  for (std::uint64_t u = 0; u < inst.sizes[0]; ++u)
    for (std::uint64_t w = 0; w < inst.sizes[inst.t]; ++w)
      b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(last + w));
  return b.build();
}

double safe_log(double x, double base) { return base > 1 ? std::log(x) / std::log(base) : 0.0; }

void measure(LayeredInstance& inst) {
  const std::size_t t = inst.t;
  const double n = static_cast<double>(inst.sizes[t]);
  const double p = inst.p;
  std::vector<double> nu;
  for (auto s : inst.sizes) nu.push_back(safe_log(static_cast<double>(s), n));
  double ell = 0;
  for (std::size_t i = 1; i <= t; ++i) {
    const double e = static_cast<double>(inst.pairs.empty() ? 0 : inst.pairs[i - 1].edges);
    if (e <= 0) continue;
    const double a = static_cast<double>(inst.sizes[i - 1]), b = static_cast<double>(inst.sizes[i]);
    ell = std::max({ell, nu[i - 1] / p + safe_log(e / a, n), nu[i] / p + safe_log(e / b, n)});
  }
  inst.lp_point.ell = ell;
  inst.lp_point.lambda = std::max(nu[0] / p + nu[t], nu[t] / p + nu[0]);
  const double N = static_cast<double>(inst.num_vertices());
  const auto P = NormSpec::finite(p);
  inst.norm_based.lambda = safe_log(inst.host_degrees.norm(P), N);
  inst.norm_based.ell = safe_log(inst.spanner_degrees.norm(P), N);
}

void equal_contribution_check(LayeredInstance& inst) {
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < inst.t; ++i) {
    const auto& lp = inst.pairs[i];
    DegreeHistogram l, r;
    add_layer(l, inst.sizes[i], lp.left_base, lp.left_extra, 0);
    add_layer(r, inst.sizes[i + 1], lp.right_base, lp.right_extra, 0);
    const double c = static_cast<double>(std::max(l.power_sum(inst.p), r.power_sum(inst.p)));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  InstanceCheck chk{"equal_contribution", true, hi / lo, std::pow(2.0, inst.p)};
  chk.holds = chk.value <= chk.bound;
  inst.checks.push_back(chk);
}

void verify_layered(LayeredInstance& inst, const BuildOptions& opts) {
  if (!opts.verify) {
    inst.stretch_mode = "not_checked";
    return;
  }
  if (inst.host_materialized) {
    auto rep = check_stretch(inst.host, inst.spanner, inst.t);
    inst.stretch_mode = "full";
    inst.stretch_checked = rep.edges_checked;
    inst.stretch_ok = rep.ok;
    return;
  }
  if (!inst.spanner_materialized) {
    inst.stretch_mode = "not_checked";
    return;
  }
  inst.stretch_mode = "sampled";
  detail::BoundedSearch search(inst.spanner.num_vertices());
  auto nbrs = [&](Vertex v) { return inst.spanner.neighbors(v); };
  KeyedRng rng({opts.seed, 0x5354u, inst.t});
  const std::uint64_t last = inst.offset(inst.t);
  for (std::size_t k = 0; k < opts.stretch_samples; ++k) {
    const auto u = static_cast<Vertex>(rng.below(inst.sizes[0]));
    const auto w = static_cast<Vertex>(last + rng.below(inst.sizes[inst.t]));
    ++inst.stretch_checked;
    if (!search.hops_within(nbrs, u, w, inst.t)) inst.stretch_ok = false;
  }
}

void finish(LayeredInstance& inst, const BuildOptions& opts) {
  fill_histograms(inst);
  std::uint64_t edges = 0;
  for (const auto& lp : inst.pairs) edges += lp.edges;
  const std::uint64_t biclique = inst.sizes[0] * inst.sizes[inst.t];
  if (inst.num_vertices() + edges <= opts.max_materialize) {
    inst.spanner = materialize(inst);
    inst.spanner_materialized = true;
    if (biclique <= opts.max_biclique) {
      inst.host = add_biclique(inst.spanner, inst);
      inst.host_materialized = true;
    }
  }
  measure(inst);
  equal_contribution_check(inst);
  verify_layered(inst, opts);
}

}  // namespace

LayeredInstance build_lcr(const LcrParams& params, double p, double n_L, const BuildOptions& opts) {
  require(p > 1, "build_lcr needs p > 1");
  require(params.t() >= 1, "empty shape");
  const std::size_t L = params.L, C = params.C, R = params.R, t = params.t();
  LayeredInstance inst;
  inst.t = t;
  inst.p = p;
  inst.params = params;
  inst.params.skew = Skew::None;
  inst.family = "lcr";
  inst.sizes.assign(t + 1, 1);
  inst.real_sizes.assign(t + 1, 1);

  double centre_real, K;
  std::uint64_t centre;
  if (C > 0) {
    require(n_L >= 2, "n_L must be at least 2");
    inst.digits = choose_digits(n_L, C);
    centre = product(inst.digits);
    centre_real = n_L;
    K = n_L * std::pow(n_L, p / static_cast<double>(C));
  } else {
    require(n_L >= 1, "the central degree must be at least 1");
    require(L >= 1 && R >= 1, "C = 0 needs L, R >= 1");
    centre = 1;
    centre_real = 1;
    K = std::pow(n_L, p);
  }
  for (std::size_t i = L; i <= L + C; ++i) inst.sizes[i] = centre, inst.real_sizes[i] = centre_real;
  auto right = outer_sizes(centre_real, K, p, R);
  for (std::size_t j = 0; j < R; ++j)
    inst.real_sizes[L + C + 1 + j] = right[j], inst.sizes[L + C + 1 + j] = floor_size(right[j]);
  auto left = outer_sizes(centre_real, K, p, L);
  for (std::size_t j = 0; j < L; ++j)
    inst.real_sizes[L - 1 - j] = left[j], inst.sizes[L - 1 - j] = floor_size(left[j]);

  std::uint64_t weight = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (i >= L && i < L + C) {
      const auto r = inst.digits[i - L];
      inst.pairs.push_back(digit_pair(inst.sizes[i], r, weight, centre));
      weight *= r;
    } else {
      inst.pairs.push_back(star_pair(inst.sizes[i], inst.sizes[i + 1]));
    }
  }
  finish(inst, opts);
  return inst;
}

LayeredInstance build_skewed(const LcrParams& params, double p, double n_L, double skew_exponent,
                             const BuildOptions& opts) {
  require(params.skew != Skew::None, "build_skewed needs a left or right skew");
  require(params.C >= 1, "skewed shapes need C >= 1");
  require(skew_exponent >= 0, "skew exponent must be non-negative");
  require(n_L >= 2, "n_L must be at least 2");
  const double dt = std::pow(n_L, skew_exponent);
  if (dt > n_L * (1 + 1e-12)) fail(ErrorCode::InvalidArgument, "skew degree exceeds n_L");
  const std::uint64_t dt_int = floor_size(dt);
  const bool right_skew = params.skew == Skew::Right;
  if (right_skew) require(params.R >= 1, "right skew needs R >= 1");
  else require(params.L >= 1, "left skew needs L >= 1");

  LcrParams plain = params;
  plain.skew = Skew::None;
  if (dt_int == 1) {
    LayeredInstance inst = build_lcr(plain, p, n_L, opts);
    inst.family = "skewed";
    inst.params = params;
    inst.params.skew_exponent = skew_exponent;
    return inst;
  }

  const std::size_t L = params.L, C = params.C, R = params.R, t = params.t();
  const double c = std::pow(n_L / dt, 1 / static_cast<double>(C));
  const double K = n_L * std::pow(c, p);
  LayeredInstance inst;
  inst.t = t;
  inst.p = p;
  inst.params = params;
  inst.params.skew_exponent = skew_exponent;
  inst.family = "skewed";
  inst.skew_degree = dt_int;
  inst.digits = choose_digits(n_L / static_cast<double>(dt_int), C);
  const std::uint64_t P = product(inst.digits);
  const std::uint64_t fan = floor_size(c);
  inst.sizes.assign(t + 1, 1);
  inst.real_sizes.assign(t + 1, 1);
  for (std::size_t i = L; i <= L + C; ++i) inst.sizes[i] = P * dt_int, inst.real_sizes[i] = n_L;
  const double boundary_real = n_L * c / dt;

  // skewed side: boundary layer, then stars; other side: stars from n_L
  const std::size_t skewed_count = right_skew ? R : L, plain_count = right_skew ? L : R;
  std::vector<double> skewed_side{boundary_real};
  auto rest = outer_sizes(boundary_real, K, p, skewed_count - 1);
  skewed_side.insert(skewed_side.end(), rest.begin(), rest.end());
  auto plain_side = outer_sizes(n_L, K, p, plain_count);
  auto layer_of = [&](bool skewed, std::size_t j) {
    // j-th layer away from the centre on the given side
    const bool go_right = skewed == right_skew;
    return go_right ? L + C + 1 + j : L - 1 - j;
  };
  for (std::size_t j = 0; j < skewed_count; ++j) {
    const auto i = layer_of(true, j);
    inst.real_sizes[i] = skewed_side[j];
    inst.sizes[i] = j == 0 ? P * fan : floor_size(skewed_side[j]);
  }
  for (std::size_t j = 0; j < plain_count; ++j) {
    const auto i = layer_of(false, j);
    inst.real_sizes[i] = plain_side[j];
    inst.sizes[i] = floor_size(plain_side[j]);
  }

  std::uint64_t weight = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (i >= L && i < L + C) {
      const auto r = inst.digits[i - L];
      inst.pairs.push_back(digit_pair(inst.sizes[i], r, weight, P));
      weight *= r;
    } else if (right_skew && i == L + C) {
      inst.pairs.push_back(block_pair(P, dt_int, fan, true));
    } else if (!right_skew && i + 1 == L) {
      inst.pairs.push_back(block_pair(P, dt_int, fan, false));
    } else {
      inst.pairs.push_back(star_pair(inst.sizes[i], inst.sizes[i + 1]));
    }
  }
  finish(inst, opts);
  return inst;
}

LayeredInstance build_from_lp(const LbLpModel<double>& model, const std::vector<double>& primal,
                              double n, std::uint64_t seed, const BuildOptions& opts) {
  require(model.form == LpForm::Full, "build_from_lp needs a full-model point");
  require(primal.size() == model.lp.num_variables(), "primal vector size mismatch");
  require(n >= 2, "n must be at least 2");
  const std::size_t t = model.t;
  LayeredInstance inst;
  inst.t = t;
  inst.p = model.p;
  inst.family = "lp";
  inst.params = LcrParams{};
  const double ln = std::log(n);
  std::vector<std::uint64_t> picks(t + 1, 0);
  for (std::size_t i = 0; i <= t; ++i) {
    const double real = std::pow(n, primal[model.nu[i]]);
    if (real > n * (1 + 1e-9))
      fail(ErrorCode::SizeLimit, "layer " + std::to_string(i) + " exceeds n vertices");
    inst.real_sizes.push_back(real);
    inst.sizes.push_back(floor_size(real));
  }
  std::uint64_t edges = 0;
  for (std::size_t i = 1; i <= t; ++i) {
    const double d = std::pow(n, primal[model.delta[i - 1]]);
    picks[i] = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(d * ln - kFloorGuard)), inst.sizes[i]);
    picks[i] = std::max<std::uint64_t>(picks[i], 1);
    edges += inst.sizes[i - 1] * picks[i];
  }
  if (inst.num_vertices() + edges > opts.max_materialize)
    fail(ErrorCode::SizeLimit, "random layered instance too large to materialize");

  GraphBuilder sb(inst.num_vertices());
  std::vector<std::vector<std::vector<std::uint32_t>>> out(t);  // out[i][v]: neighbours in V_{i+1}
  std::uint64_t off = 0;
  for (std::size_t i = 1; i <= t; ++i) {
    const std::uint64_t a = inst.sizes[i - 1], off2 = off + a;
    out[i - 1].resize(a);
    LayerPair lp;
    lp.kind = PairKind::Grow;
    for (std::uint64_t v = 0; v < a; ++v) {
      KeyedRng rng({seed, i, v});
      for (auto w : rng.sample(inst.sizes[i], picks[i])) {
        out[i - 1][v].push_back(static_cast<std::uint32_t>(w));
        sb.add_edge(static_cast<Vertex>(off + v), static_cast<Vertex>(off2 + w));
      }
    }
    lp.edges = a * picks[i];
    inst.pairs.push_back(lp);
    off = off2;
  }
  inst.spanner = sb.build();
  inst.spanner_materialized = true;

  // reach[v] over V_t as bitsets, computed from the last layer backwards
  const std::uint64_t nt = inst.sizes[t], words = (nt + 63) / 64;
  long double bits = 0;
  for (auto s : inst.sizes) bits += static_cast<long double>(s) * static_cast<long double>(words) * 64;
  if (bits > 4e9L) fail(ErrorCode::SizeLimit, "reachability table too large");
  std::vector<std::vector<std::uint64_t>> reach(inst.sizes[t], std::vector<std::uint64_t>(words, 0));
  for (std::uint64_t w = 0; w < nt; ++w) reach[w][w / 64] |= 1ULL << (w % 64);
  for (std::size_t i = t; i-- > 0;) {
    std::vector<std::vector<std::uint64_t>> prev(inst.sizes[i], std::vector<std::uint64_t>(words, 0));
    for (std::uint64_t v = 0; v < inst.sizes[i]; ++v)
      for (auto w : out[i][v])
        for (std::uint64_t k = 0; k < words; ++k) prev[v][k] |= reach[w][k];
    reach.swap(prev);
  }
  std::uint64_t min_reach = nt, pairs = 0;
  for (const auto& r : reach) {
    std::uint64_t c = 0;
    for (auto x : r) c += static_cast<std::uint64_t>(std::popcount(x));
    min_reach = std::min(min_reach, c);
    pairs += c;
  }
  const double target = std::pow(n, primal[model.Delta_hat[t - 1]]) / std::pow(2.0, static_cast<double>(t));
  InstanceCheck chk{"reach", true, static_cast<double>(min_reach), target};
  chk.holds = chk.value >= chk.bound;
  inst.checks.push_back(chk);

  if (pairs <= opts.max_biclique) {
    GraphBuilder hb(inst.num_vertices());
    for (const auto& e : inst.spanner.edges()) hb.add_edge(e.u, e.v);
    const std::uint64_t last = inst.offset(t);
    for (std::uint64_t u = 0; u < inst.sizes[0]; ++u)
      for (std::uint64_t w = 0; w < nt; ++w) {
        if (!((reach[u][w / 64] >> (w % 64)) & 1)) continue;
        if (t == 1) continue;  // already a spanner edge
        hb.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(last + w));
      }
    inst.host = hb.build();
    inst.host_materialized = true;
    inst.host_degrees = DegreeHistogram::of(inst.host);
  }
  inst.spanner_degrees = DegreeHistogram::of(inst.spanner);
  measure(inst);
  verify_layered(inst, opts);
  return inst;
}

HighGirthHost high_girth_host(std::size_t k, std::size_t max_vertices) {
  HighGirthHost out;
  std::size_t best = 0;
  if (k == 2) {
    for (std::size_t q = 2; q <= 31; ++q)
      if (is_prime_power(q) && 2 * (q * q + q + 1) <= max_vertices) best = q;
    if (!best) fail(ErrorCode::Construction, "no projective plane fits in " + std::to_string(max_vertices) + " vertices");
    out.graph = projective_plane_incidence(best);
    out.name = "pg2_" + std::to_string(best);
  } else if (k == 3) {
    for (std::size_t q = 2; q <= 13; ++q)
      if (is_prime_power(q) && 2 * (q + 1) * (q * q + 1) <= max_vertices) best = q;
    if (!best) fail(ErrorCode::Construction, "no quadrangle fits in " + std::to_string(max_vertices) + " vertices");
    out.graph = gq_incidence(best);
    out.name = "gq_" + std::to_string(best);
  } else {
    fail(ErrorCode::InvalidArgument, "no girth construction available for k = " + std::to_string(k));
  }
  return out;
}

TightnessInstance build_tightness(std::size_t k, double p, std::size_t n, double Lambda) {
  require(k >= 2, "k must be at least 2");
  require(p >= 1, "p must be at least 1");
  require(n >= 2, "n must be at least 2");
  const double nd = static_cast<double>(n);
  if (Lambda < std::pow(nd, 1 / p) * (1 - 1e-12) || Lambda > std::pow(nd, (1 + p) / p) * (1 + 1e-12))
    fail(ErrorCode::InvalidArgument, "Lambda must lie in [n^{1/p}, n^{(1+p)/p}]");
  TightnessInstance out;
  out.k = k;
  out.p = p;
  out.n = n;
  out.Lambda = Lambda;
  const double kd = static_cast<double>(k);
  const bool high_p = p >= kd / (kd - 1);
  GraphBuilder b(0);
  std::vector<Edge> forced;
  auto clique = [&](std::size_t m) {
    const Vertex base = static_cast<Vertex>(b.num_vertices());
    for (std::size_t i = 0; i < m; ++i) b.add_vertex();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        b.add_edge(base + static_cast<Vertex>(i), base + static_cast<Vertex>(j));
    return base;
  };
  auto clique_size = [&]() {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(std::pow(Lambda, p / (1 + p)) + kFloorGuard)));
  };
  auto add_forced = [&](Vertex u, Vertex v) {
    b.add_edge(u, v);
    forced.push_back({std::min(u, v), std::max(u, v)});
  };

  if (high_p && Lambda <= nd) {
    out.case_id = 1;
    const auto leaves = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(Lambda)));
    const Vertex centre = b.add_vertex();
    Vertex last = -1;
    for (std::size_t i = 0; i < leaves; ++i) {
      Vertex v = b.add_vertex();
      add_forced(centre, v);
      if (last < 0) last = v;
    }
    // path hangs off the first leaf
    while (b.num_vertices() < n) {
      Vertex v = b.add_vertex();
      add_forced(last, v);
      last = v;
    }
  } else if (high_p) {
    out.case_id = 2;
    out.clique_size = clique_size();
    const Vertex c0 = clique(out.clique_size);
    const Vertex centre = b.add_vertex();
    for (std::size_t i = 0; i < n; ++i) add_forced(centre, b.add_vertex());
    add_forced(c0, centre);
  } else {
    const double host_exp = (kd + p) / (kd * p);
    if (Lambda <= std::pow(nd, host_exp)) {
      out.case_id = 3;
      auto host = high_girth_host(k, n);
      out.host_name = host.name;
      for (std::size_t i = 0; i < n; ++i) b.add_vertex();
      // edges of the host in id order until the norm reaches Lambda
      std::vector<std::int64_t> deg(n, 0);
      long double sum = 0;
      const long double target = std::pow(static_cast<long double>(Lambda), p);
      for (const auto& e : host.graph.edges()) {
        if (sum >= target) break;
        for (auto v : {e.u, e.v}) {
          auto& d = deg[static_cast<std::size_t>(v)];
          sum += std::pow(static_cast<long double>(d + 1), p) - std::pow(static_cast<long double>(d), p);
          ++d;
        }
        add_forced(e.u, e.v);
      }
    } else {
      out.case_id = 4;
      auto host = high_girth_host(k, n / 2);
      out.host_name = host.name;
      out.clique_size = clique_size();
      const Vertex c0 = clique(out.clique_size);
      const Vertex h0 = static_cast<Vertex>(b.num_vertices());
      for (std::size_t i = 0; i < host.graph.num_vertices(); ++i) b.add_vertex();
      for (const auto& e : host.graph.edges()) add_forced(h0 + e.u, h0 + e.v);
      add_forced(c0, h0);
    }
  }
  out.graph = b.build();
  for (const auto& e : forced) out.forced_edges.push_back(*out.graph.find_edge(e.u, e.v));
  std::sort(out.forced_edges.begin(), out.forced_edges.end());
  out.norm = lp_norm(out.graph, NormSpec::finite(p));
  return out;
}

}  // namespace spanorm
